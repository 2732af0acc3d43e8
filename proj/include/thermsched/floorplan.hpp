#pragma once

#include "thermsched/geometry.hpp"
#include "thermsched/techlib.hpp"
#include "thermsched/thermal.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace thermsched {

struct FitnessWeights {
  double wArea = 1.0;
  double wTemp = 1.0;
};

struct GaConfig {
  std::size_t populationSize = 50;
  std::size_t generations = 100;
  double mutationRate = 0.3;
  std::size_t tournamentSize = 3;
  FitnessWeights weights;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Row-major grid with ceil(sqrt(k)) columns; every cell is as large as the
/// largest block in each dimension. The chip is the grid's bounding box.
Floorplan grid_floorplan(const Architecture &arch, const TechLibrary &lib);

/// Peak temperature is divided by this before weighting, in degrees C.
inline constexpr double kFitnessTempScale = 100.0;

/// wArea * dead_space_ratio + wTemp * peakTemp / 100 C. Lower is fitter.
double fitness(const Floorplan &fp, const std::map<std::size_t, double> &estPower,
               const FitnessWeights &weights, const ThermalConfig &tcfg);

/// Called after the initial population (generation 0) and after every
/// generation with the best individual so far.
using GaObserver = std::function<void(std::size_t generation,
                                      const Floorplan &best, double fitness)>;

/// Thermal-aware slicing floorplanner: genetic search over normalized Polish
/// expressions with tournament selection, order crossover, elitism and
/// rotation. Deterministic per cfg.seed.
Floorplan ga_floorplan(const Architecture &arch, const TechLibrary &lib,
                       const std::map<std::size_t, double> &estPower,
                       const GaConfig &cfg, const ThermalConfig &tcfg,
                       const GaObserver &observer = {});

} // namespace thermsched
