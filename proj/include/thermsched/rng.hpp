#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace thermsched {

/// Combines two 64-bit values into a well-mixed stream seed (splitmix64).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

/// Seed for an independent stream keyed by (seed, label). Stable across
/// platforms: the label is hashed with FNV-1a, not std::hash.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);

/// Thin wrapper over mt19937_64 with platform-independent mappings to
/// reals and bounded integers (the std distributions are not portable).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform01();
  /// Uniform in [lo, hi].
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n). n must be positive.
  std::size_t below(std::size_t n);
  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

private:
  std::mt19937_64 engine_;
};

} // namespace thermsched
