#include "thermsched/thermal.hpp"

#include "thermsched/errors.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace thermsched {

void ThermalConfig::validate() const {
  if (!(ambient >= 0.0) || !(kSilicon > 0.0) || !(tSilicon > 0.0) ||
      !(rPackageUnit > 0.0) || !std::isfinite(ambient) ||
      !std::isfinite(kSilicon) || !std::isfinite(tSilicon) ||
      !std::isfinite(rPackageUnit)) {
    throw FormatError("thermal constants must be positive (ambient >= 0)");
  }
}

std::size_t ThermalModel::indexOf(std::size_t instanceId) const {
  auto it = std::lower_bound(blockOrder_.begin(), blockOrder_.end(), instanceId);
  if (it == blockOrder_.end() || *it != instanceId) {
    throw RefError("no thermal block for PE instance " +
                   std::to_string(instanceId));
  }
  return static_cast<std::size_t>(it - blockOrder_.begin());
}

ThermalModel build_model(const Floorplan &fp, const ThermalConfig &cfg) {
  cfg.validate();
  if (fp.blocks.empty()) {
    throw GeometryError("floorplan has no blocks");
  }
  validate_floorplan(fp);

  ThermalModel m;
  const std::size_t n = fp.blocks.size();
  std::vector<Rect> rects;
  rects.reserve(n);
  for (const auto &[id, r] : fp.blocks) {
    m.blockOrder_.push_back(id);
    rects.push_back(r);
  }

  m.conductance_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                         static_cast<Eigen::Index>(n));
  m.verticalG_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.verticalG_[i] = rects[i].area() / cfg.rPackageUnit;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto ei = static_cast<Eigen::Index>(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double len = shared_boundary(rects[i], rects[j]);
      if (len <= 0.0) {
        continue;
      }
      const double d = std::hypot(rects[i].cx() - rects[j].cx(),
                                  rects[i].cy() - rects[j].cy());
      const double g = cfg.kSilicon * cfg.tSilicon * len / d;
      const auto ej = static_cast<Eigen::Index>(j);
      m.conductance_(ei, ej) -= g;
      m.conductance_(ej, ei) -= g;
      m.conductance_(ei, ei) += g;
      m.conductance_(ej, ej) += g;
    }
    m.conductance_(ei, ei) += m.verticalG_[i];
  }

  if (n <= ThermalModel::kDirectLimit) {
    m.factor_.compute(m.conductance_);
    if (m.factor_.info() != Eigen::Success) {
      throw SingularError("conductance matrix is not positive definite");
    }
  }
  return m;
}

Eigen::VectorXd ThermalModel::solveRise(std::span<const double> power) const {
  const auto n = static_cast<Eigen::Index>(size());
  if (power.size() != size()) {
    throw RefError("power vector has " + std::to_string(power.size()) +
                   " entries for " + std::to_string(size()) + " blocks");
  }
  Eigen::Map<const Eigen::VectorXd> p(power.data(), n);
  if (p.isZero(0.0)) {
    return Eigen::VectorXd::Zero(n);
  }
  if (size() <= kDirectLimit) {
    return factor_.solve(p);
  }

  Eigen::SparseMatrix<double> sparse = conductance_.sparseView();
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>,
                           Eigen::Lower | Eigen::Upper>
      cg;
  cg.setTolerance(1e-14);
  cg.setMaxIterations(static_cast<Eigen::Index>(20 * size() + 100));
  cg.compute(sparse);
  Eigen::VectorXd x = cg.solve(p);
  const double residual = (conductance_ * x - p).norm();
  if (!(residual <= 1e-10 * std::max(1.0, p.norm()))) {
    throw SingularError("iterative thermal solve did not converge (residual " +
                        std::to_string(residual) + ")");
  }
  return x;
}

TemperatureMap solve_steady_state(const ThermalModel &m,
                                  std::span<const double> power,
                                  const ThermalConfig &cfg) {
  for (double p : power) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw FormatError("block powers must be finite and non-negative");
    }
  }
  const Eigen::VectorXd rise = m.solveRise(power);
  TemperatureMap out;
  double sum = 0.0;
  double hottest = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double t = cfg.ambient + rise(static_cast<Eigen::Index>(i));
    out.tempByBlock.emplace(m.blockOrder()[i], t);
    sum += t;
    hottest = std::max(hottest, t);
  }
  out.maxTemp = hottest;
  out.avgTemp = sum / static_cast<double>(m.size());
  return out;
}

TemperatureMap solve_steady_state(const ThermalModel &m,
                                  const std::map<std::size_t, double> &power,
                                  const ThermalConfig &cfg) {
  std::vector<double> p(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto it = power.find(m.blockOrder()[i]);
    if (it == power.end()) {
      throw RefError("no power entry for block " +
                     std::to_string(m.blockOrder()[i]));
    }
    p[i] = it->second;
  }
  return solve_steady_state(m, std::span<const double>(p), cfg);
}

} // namespace thermsched
