#include "thermsched/techlib.hpp"

#include "thermsched/errors.hpp"
#include "thermsched/rng.hpp"

#include <cmath>
#include <string>

namespace thermsched {

TechLibrary::TechLibrary(std::vector<PEType> peTypes,
                         std::vector<std::vector<double>> wcet,
                         std::vector<std::vector<double>> wcpc)
    : peTypes_(std::move(peTypes)), wcet_(std::move(wcet)),
      wcpc_(std::move(wcpc)) {
  if (peTypes_.empty()) {
    throw FormatError("technology library has no PE types");
  }
  for (std::size_t i = 0; i < peTypes_.size(); ++i) {
    const auto &t = peTypes_[i];
    if (t.typeId != i) {
      throw FormatError("PE type ids must be dense and ordered; entry " +
                        std::to_string(i) + " has id " +
                        std::to_string(t.typeId));
    }
    if (!(t.width > 0.0) || !(t.height > 0.0) || !std::isfinite(t.width) ||
        !std::isfinite(t.height)) {
      throw FormatError("PE type " + std::to_string(i) +
                        " has non-positive dimensions");
    }
  }
  if (wcet_.size() != wcpc_.size()) {
    throw FormatError("WCET and WCPC tables have different row counts");
  }
  for (std::size_t r = 0; r < wcet_.size(); ++r) {
    if (wcet_[r].size() != peTypes_.size() ||
        wcpc_[r].size() != peTypes_.size()) {
      throw FormatError("library row " + std::to_string(r) +
                        " does not have one entry per PE type");
    }
    for (std::size_t p = 0; p < peTypes_.size(); ++p) {
      if (!(wcet_[r][p] > 0.0) || !std::isfinite(wcet_[r][p])) {
        throw FormatError("WCET must be positive (row " + std::to_string(r) +
                          ", type " + std::to_string(p) + ")");
      }
      if (!(wcpc_[r][p] > 0.0) || !std::isfinite(wcpc_[r][p])) {
        throw FormatError("WCPC must be positive (row " + std::to_string(r) +
                          ", type " + std::to_string(p) + ")");
      }
    }
  }
}

double TechLibrary::meanWcet(std::size_t row) const {
  const auto &r = wcet_.at(row);
  double sum = 0.0;
  for (double v : r) {
    sum += v;
  }
  return sum / static_cast<double>(r.size());
}

Architecture::Architecture(std::vector<PeInstance> instances)
    : instances_(std::move(instances)) {
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    if (instances_[i].instanceId != i) {
      throw FormatError("architecture instance ids must be dense 0..k-1");
    }
  }
}

Architecture Architecture::fromTypes(const std::vector<std::size_t> &typeIds) {
  std::vector<PeInstance> inst;
  inst.reserve(typeIds.size());
  for (std::size_t i = 0; i < typeIds.size(); ++i) {
    inst.push_back({i, typeIds[i]});
  }
  return Architecture(std::move(inst));
}

std::vector<std::size_t> Architecture::typeIds() const {
  std::vector<std::size_t> out;
  out.reserve(instances_.size());
  for (const auto &pe : instances_) {
    out.push_back(pe.peTypeId);
  }
  return out;
}

void Architecture::validate(const TechLibrary &lib) const {
  for (const auto &pe : instances_) {
    if (pe.peTypeId >= lib.types()) {
      throw RefError("PE instance " + std::to_string(pe.instanceId) +
                     " refers to unknown PE type " +
                     std::to_string(pe.peTypeId));
    }
  }
}

bool operator==(const Architecture &a, const Architecture &b) {
  return a.typeIds() == b.typeIds();
}

TechLibrary generate_random_library(std::size_t nTaskRows, std::size_t nPeTypes,
                                    bool identical, std::uint64_t seed,
                                    const LibraryGenConfig &cfg) {
  if (nTaskRows == 0 || nPeTypes == 0) {
    throw FormatError("library needs at least one row and one PE type");
  }
  Rng rng(seed);
  const auto lo = static_cast<std::int64_t>(std::ceil(cfg.wcetMin));
  const auto hi = static_cast<std::int64_t>(std::floor(cfg.wcetMax));
  std::vector<std::vector<double>> wcet(nTaskRows, std::vector<double>(nPeTypes));
  std::vector<std::vector<double>> wcpc(nTaskRows, std::vector<double>(nPeTypes));
  // Always draw the full table so column 0 does not depend on `identical`.
  for (std::size_t r = 0; r < nTaskRows; ++r) {
    for (std::size_t p = 0; p < nPeTypes; ++p) {
      wcet[r][p] = static_cast<double>(rng.between(lo, hi));
      wcpc[r][p] = rng.uniform(cfg.wcpcMin, cfg.wcpcMax);
    }
  }
  if (identical) {
    for (std::size_t r = 0; r < nTaskRows; ++r) {
      for (std::size_t p = 1; p < nPeTypes; ++p) {
        wcet[r][p] = wcet[r][0];
        wcpc[r][p] = wcpc[r][0];
      }
    }
  }
  std::vector<PEType> types;
  for (std::size_t p = 0; p < nPeTypes; ++p) {
    types.push_back({p, cfg.peWidth, cfg.peHeight});
  }
  return TechLibrary(std::move(types), std::move(wcet), std::move(wcpc));
}

Architecture platform_architecture(std::size_t nPes, std::size_t peTypeId) {
  if (nPes == 0) {
    throw FormatError("platform architecture needs at least one PE");
  }
  return Architecture::fromTypes(std::vector<std::size_t>(nPes, peTypeId));
}

} // namespace thermsched
