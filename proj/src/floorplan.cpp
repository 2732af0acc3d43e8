#include "thermsched/floorplan.hpp"

#include "thermsched/errors.hpp"
#include "thermsched/slicing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace thermsched {

void GaConfig::validate() const {
  if (populationSize < 2) {
    throw FormatError("GA population must hold at least two individuals");
  }
  if (!(mutationRate >= 0.0 && mutationRate <= 1.0)) {
    throw FormatError("GA mutation rate must lie in [0, 1]");
  }
  if (tournamentSize < 1) {
    throw FormatError("GA tournament size must be positive");
  }
  if (!(weights.wArea >= 0.0) || !(weights.wTemp >= 0.0) ||
      !(weights.wArea + weights.wTemp > 0.0)) {
    throw FormatError("fitness weights must be non-negative, not both zero");
  }
}

Floorplan grid_floorplan(const Architecture &arch, const TechLibrary &lib) {
  if (arch.empty()) {
    throw FormatError("cannot floorplan an empty architecture");
  }
  arch.validate(lib);
  const std::size_t k = arch.size();
  const auto cols = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(k))));
  const std::size_t rows = (k + cols - 1) / cols;
  double cellW = 0.0;
  double cellH = 0.0;
  for (const auto &pe : arch.instances()) {
    cellW = std::max(cellW, lib.peType(pe.peTypeId).width);
    cellH = std::max(cellH, lib.peType(pe.peTypeId).height);
  }
  Floorplan fp;
  for (std::size_t i = 0; i < k; ++i) {
    const auto &t = lib.peType(arch[i].peTypeId);
    fp.blocks[arch[i].instanceId] =
        Rect{static_cast<double>(i % cols) * cellW,
             static_cast<double>(i / cols) * cellH, t.width, t.height};
  }
  fp.chipWidth = static_cast<double>(std::min(cols, k)) * cellW;
  fp.chipHeight = static_cast<double>(rows) * cellH;
  return fp;
}

double fitness(const Floorplan &fp, const std::map<std::size_t, double> &estPower,
               const FitnessWeights &weights, const ThermalConfig &tcfg) {
  double score = weights.wArea * dead_space_ratio(fp);
  if (weights.wTemp > 0.0) {
    const auto temps = solve_steady_state(build_model(fp, tcfg), estPower, tcfg);
    score += weights.wTemp * temps.maxTemp / kFitnessTempScale;
  }
  return score;
}

namespace {

struct Individual {
  PolishExpression expr;
  Floorplan fp;
  double score = 0.0;
};

std::size_t tournament(const std::vector<Individual> &pop, std::size_t size,
                       Rng &rng) {
  std::size_t best = rng.below(pop.size());
  for (std::size_t i = 1; i < size; ++i) {
    const std::size_t c = rng.below(pop.size());
    if (pop[c].score < pop[best].score ||
        (pop[c].score == pop[best].score && c < best)) {
      best = c;
    }
  }
  return best;
}

void mutate(PolishExpression &e, Rng &rng) {
  switch (rng.below(4)) {
  case 0:
    mutate_swap_operands(e, rng);
    break;
  case 1:
    mutate_complement_chain(e, rng);
    break;
  case 2:
    mutate_swap_adjacent(e, rng);
    break;
  default:
    mutate_rotate(e, rng);
    break;
  }
}

bool duplicate(const std::vector<Individual> &pop, std::size_t i) {
  for (std::size_t j = 0; j < i; ++j) {
    if (pop[j].expr == pop[i].expr) {
      return true;
    }
  }
  return false;
}

std::size_t best_index(const std::vector<Individual> &pop) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pop.size(); ++i) {
    if (pop[i].score < pop[best].score) {
      best = i;
    }
  }
  return best;
}

} // namespace

Floorplan ga_floorplan(const Architecture &arch, const TechLibrary &lib,
                       const std::map<std::size_t, double> &estPower,
                       const GaConfig &cfg, const ThermalConfig &tcfg,
                       const GaObserver &observer) {
  cfg.validate();
  tcfg.validate();
  if (arch.empty()) {
    throw FormatError("cannot floorplan an empty architecture");
  }
  arch.validate(lib);
  for (const auto &pe : arch.instances()) {
    if (estPower.count(pe.instanceId) == 0) {
      throw RefError("no estimated power for PE instance " +
                     std::to_string(pe.instanceId));
    }
  }

  const std::size_t k = arch.size();
  std::vector<std::size_t> ids;
  std::vector<std::pair<double, double>> dims;
  for (const auto &pe : arch.instances()) {
    ids.push_back(pe.instanceId);
    const auto &t = lib.peType(pe.peTypeId);
    dims.emplace_back(t.width, t.height);
  }

  auto evaluate = [&](Individual &ind) {
    ind.fp = decode(ind.expr, ids, dims);
    auto violations = floorplan_violations(ind.fp);
    if (!violations.empty()) {
      throw GeometryError("GA produced an invalid floorplan: " +
                          violations.front());
    }
    ind.score = fitness(ind.fp, estPower, cfg.weights, tcfg);
  };

  std::vector<Individual> pop(cfg.populationSize);
  for (std::size_t i = 0; i < pop.size(); ++i) {
    Rng rng(mix_seed(derive_seed(cfg.seed, "ga-init"), i));
    pop[i].expr = random_expression(k, rng);
    evaluate(pop[i]);
  }
  std::size_t best = best_index(pop);
  if (observer) {
    observer(0, pop[best].fp, pop[best].score);
  }

  for (std::size_t gen = 1; gen <= cfg.generations; ++gen) {
    std::vector<Individual> next(pop.size());
    next[0] = pop[best];
    const std::uint64_t genSeed = mix_seed(derive_seed(cfg.seed, "ga-gen"), gen);
    for (std::size_t i = 1; i < next.size(); ++i) {
      Rng rng(mix_seed(genSeed, i));
      const auto &a = pop[tournament(pop, cfg.tournamentSize, rng)];
      const auto &b = pop[tournament(pop, cfg.tournamentSize, rng)];
      next[i].expr = crossover(a.expr, b.expr, rng);
      if (rng.uniform01() < cfg.mutationRate) {
        mutate(next[i].expr, rng);
      }
      // duplicates collapse diversity; replace with a fresh individual
      if (duplicate(next, i)) {
        next[i].expr = random_expression(k, rng);
      }
      evaluate(next[i]);
    }
    pop = std::move(next);
    best = best_index(pop);
    if (observer) {
      observer(gen, pop[best].fp, pop[best].score);
    }
  }
  return pop[best].fp;
}

} // namespace thermsched
