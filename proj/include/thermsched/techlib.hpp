#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace thermsched {

/// A processing-element type. Dimensions are in meters.
struct PEType {
  std::size_t typeId = 0;
  double width = 8e-3;
  double height = 8e-3;
};

/// Worst-case execution time (ticks) and worst-case power consumption (W)
/// of every task row on every PE type, plus the PE types' footprints.
class TechLibrary {
public:
  TechLibrary(std::vector<PEType> peTypes, std::vector<std::vector<double>> wcet,
              std::vector<std::vector<double>> wcpc);

  std::size_t rows() const { return wcet_.size(); }
  std::size_t types() const { return peTypes_.size(); }

  const std::vector<PEType> &peTypes() const { return peTypes_; }
  const PEType &peType(std::size_t typeId) const { return peTypes_.at(typeId); }

  double wcet(std::size_t row, std::size_t typeId) const {
    return wcet_.at(row).at(typeId);
  }
  double wcpc(std::size_t row, std::size_t typeId) const {
    return wcpc_.at(row).at(typeId);
  }
  /// WCPC * WCET, in joules (W * tick).
  double energy(std::size_t row, std::size_t typeId) const {
    return wcpc(row, typeId) * wcet(row, typeId);
  }
  /// Arithmetic mean of the row's WCET across all PE types.
  double meanWcet(std::size_t row) const;

  const std::vector<std::vector<double>> &wcetTable() const { return wcet_; }
  const std::vector<std::vector<double>> &wcpcTable() const { return wcpc_; }

private:
  std::vector<PEType> peTypes_;
  std::vector<std::vector<double>> wcet_;
  std::vector<std::vector<double>> wcpc_;
};

struct PeInstance {
  std::size_t instanceId = 0;
  std::size_t peTypeId = 0;
};

/// An ordered set of PE instances with dense ids 0..k-1.
class Architecture {
public:
  Architecture() = default;
  explicit Architecture(std::vector<PeInstance> instances);

  /// Builds from type ids; instance i gets type typeIds[i].
  static Architecture fromTypes(const std::vector<std::size_t> &typeIds);

  std::size_t size() const { return instances_.size(); }
  bool empty() const { return instances_.empty(); }
  const std::vector<PeInstance> &instances() const { return instances_; }
  const PeInstance &operator[](std::size_t i) const { return instances_[i]; }

  std::vector<std::size_t> typeIds() const;

  /// Throws RefError when an instance names a type missing from lib.
  void validate(const TechLibrary &lib) const;

  friend bool operator==(const Architecture &a, const Architecture &b);

private:
  std::vector<PeInstance> instances_;
};

/// Calibration knobs for the synthetic technology library.
struct LibraryGenConfig {
  double wcetMin = 20.0;
  double wcetMax = 120.0;
  double wcpcMin = 0.5;
  double wcpcMax = 3.0;
  double peWidth = 8e-3;
  double peHeight = 8e-3;
};

/// Random library. WCETs are whole ticks drawn uniformly from
/// [wcetMin, wcetMax]; WCPCs are uniform reals in [wcpcMin, wcpcMax].
/// With identical=true every column is a copy of column 0, and column 0 is
/// the same as the non-identical library drawn from the same seed.
TechLibrary generate_random_library(std::size_t nTaskRows, std::size_t nPeTypes,
                                    bool identical, std::uint64_t seed,
                                    const LibraryGenConfig &cfg = {});

/// nPes identical instances of peTypeId.
Architecture platform_architecture(std::size_t nPes, std::size_t peTypeId);

} // namespace thermsched
