#pragma once

#include "thermsched/geometry.hpp"
#include "thermsched/rng.hpp"

#include <cstddef>
#include <vector>

namespace thermsched {

/// Postfix slicing expression over k operands (blocks 0..k-1) and the
/// H (stack vertically) and V (side by side) cut operators, with a
/// per-operand 90-degree rotation flag.
struct PolishExpression {
  static constexpr int kH = -1;
  static constexpr int kV = -2;

  std::vector<int> tokens;
  std::vector<bool> rotated; ///< indexed by operand

  static bool isOperator(int token) { return token < 0; }
  std::size_t operands() const { return rotated.size(); }

  /// Every operand exactly once, k-1 operators, balloting property, and no
  /// two adjacent identical operators.
  bool isNormalized() const;

  friend bool operator==(const PolishExpression &,
                         const PolishExpression &) = default;
};

/// Uniformly shuffled operands on a random valid operator skeleton.
PolishExpression random_expression(std::size_t k, Rng &rng);

/// Swaps two distinct operands.
void mutate_swap_operands(PolishExpression &e, Rng &rng);
/// Complements one maximal operator chain (H <-> V).
void mutate_complement_chain(PolishExpression &e, Rng &rng);
/// Swaps an adjacent operand/operator pair when the result stays normalized.
/// Returns false when no such pair exists.
bool mutate_swap_adjacent(PolishExpression &e, Rng &rng);
/// Flips the rotation of one operand.
void mutate_rotate(PolishExpression &e, Rng &rng);

/// Operator pattern from a; operands: a prefix of a's operand order, the
/// rest in the order they occur in b. Rotation flags travel with the
/// operand's source parent.
PolishExpression crossover(const PolishExpression &a, const PolishExpression &b,
                           Rng &rng);

/// Places blocks with the given unrotated (width, height) dims. Operand i
/// becomes block ids[i]. The chip is the bounding box of the root slice.
Floorplan decode(const PolishExpression &e, const std::vector<std::size_t> &ids,
                 const std::vector<std::pair<double, double>> &dims);

} // namespace thermsched
