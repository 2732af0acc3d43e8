#pragma once

#include "thermsched/geometry.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace thermsched {

/// Constants of the compact model. Defaults are calibration values.
struct ThermalConfig {
  double ambient = 45.0;        ///< degrees C
  double kSilicon = 100.0;      ///< W/(m K)
  double tSilicon = 0.5e-3;     ///< m
  double rPackageUnit = 3.5e-4; ///< K m^2 / W

  /// Throws FormatError unless every constant is positive (ambient >= 0).
  void validate() const;
};

/// Steady-state block conductance network: graph Laplacian of the lateral
/// block-to-block conductances plus the per-block vertical (package)
/// conductances on the diagonal. Immutable after build_model.
class ThermalModel {
public:
  /// Systems up to this size are factored densely; larger ones use
  /// conjugate gradients.
  static constexpr std::size_t kDirectLimit = 64;

  std::size_t size() const { return blockOrder_.size(); }
  const Eigen::MatrixXd &conductance() const { return conductance_; }
  const std::vector<double> &verticalG() const { return verticalG_; }
  /// Instance id of each matrix row.
  const std::vector<std::size_t> &blockOrder() const { return blockOrder_; }
  /// Row of an instance id; throws RefError when absent.
  std::size_t indexOf(std::size_t instanceId) const;

  /// Solves G * dT = power (power in block order), returns dT.
  Eigen::VectorXd solveRise(std::span<const double> power) const;

private:
  friend ThermalModel build_model(const Floorplan &, const ThermalConfig &);

  Eigen::MatrixXd conductance_;
  std::vector<double> verticalG_;
  std::vector<std::size_t> blockOrder_;
  Eigen::LLT<Eigen::MatrixXd> factor_;
};

struct TemperatureMap {
  std::map<std::size_t, double> tempByBlock; ///< degrees C
  double maxTemp = 0.0;
  double avgTemp = 0.0;
};

ThermalModel build_model(const Floorplan &fp, const ThermalConfig &cfg);

/// Every block of the model needs a non-negative power entry.
TemperatureMap solve_steady_state(const ThermalModel &m,
                                  const std::map<std::size_t, double> &power,
                                  const ThermalConfig &cfg);

/// Same, with power given in the model's block order.
TemperatureMap solve_steady_state(const ThermalModel &m,
                                  std::span<const double> power,
                                  const ThermalConfig &cfg);

} // namespace thermsched
