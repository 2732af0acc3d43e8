#include "thermsched/slicing.hpp"

#include "thermsched/errors.hpp"

#include <algorithm>
#include <tuple>

namespace thermsched {

bool PolishExpression::isNormalized() const {
  const std::size_t k = rotated.size();
  if (k == 0 || tokens.size() != 2 * k - 1) {
    return false;
  }
  std::vector<bool> seen(k, false);
  std::size_t nOperands = 0;
  std::size_t nOperators = 0;
  int previous = 0;
  for (int t : tokens) {
    if (isOperator(t)) {
      if (t != kH && t != kV) {
        return false;
      }
      if (previous == t) {
        return false;
      }
      ++nOperators;
      if (nOperators >= nOperands) {
        return false;
      }
    } else {
      const auto idx = static_cast<std::size_t>(t);
      if (idx >= k || seen[idx]) {
        return false;
      }
      seen[idx] = true;
      ++nOperands;
    }
    previous = t;
  }
  return nOperands == k && nOperators == k - 1;
}

PolishExpression random_expression(std::size_t k, Rng &rng) {
  PolishExpression e;
  e.rotated.resize(k);
  std::vector<int> order(k);
  for (std::size_t i = 0; i < k; ++i) {
    order[i] = static_cast<int>(i);
  }
  for (std::size_t i = k; i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(i)]);
  }
  for (std::size_t i = 0; i < k; ++i) {
    e.rotated[i] = rng.below(2) == 1;
  }

  std::size_t placedOperands = 0;
  std::size_t placedOperators = 0;
  int previous = 0;
  while (placedOperands < k || placedOperators + 1 < k) {
    const bool canOperand = placedOperands < k;
    const bool canOperator = placedOperators + 1 < placedOperands;
    bool takeOperand = canOperand && (!canOperator || rng.below(2) == 0);
    if (takeOperand) {
      e.tokens.push_back(order[placedOperands++]);
      previous = 0;
    } else {
      int op = rng.below(2) == 0 ? PolishExpression::kH : PolishExpression::kV;
      if (op == previous) {
        op = op == PolishExpression::kH ? PolishExpression::kV
                                        : PolishExpression::kH;
      }
      e.tokens.push_back(op);
      previous = op;
      ++placedOperators;
    }
  }
  return e;
}

void mutate_swap_operands(PolishExpression &e, Rng &rng) {
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < e.tokens.size(); ++i) {
    if (!PolishExpression::isOperator(e.tokens[i])) {
      pos.push_back(i);
    }
  }
  if (pos.size() < 2) {
    return;
  }
  std::size_t a = rng.below(pos.size());
  std::size_t b = rng.below(pos.size() - 1);
  if (b >= a) {
    ++b;
  }
  std::swap(e.tokens[pos[a]], e.tokens[pos[b]]);
}

void mutate_complement_chain(PolishExpression &e, Rng &rng) {
  std::vector<std::pair<std::size_t, std::size_t>> chains;
  for (std::size_t i = 0; i < e.tokens.size();) {
    if (PolishExpression::isOperator(e.tokens[i])) {
      std::size_t j = i;
      while (j < e.tokens.size() && PolishExpression::isOperator(e.tokens[j])) {
        ++j;
      }
      chains.emplace_back(i, j);
      i = j;
    } else {
      ++i;
    }
  }
  if (chains.empty()) {
    return;
  }
  auto [from, to] = chains[rng.below(chains.size())];
  for (std::size_t i = from; i < to; ++i) {
    e.tokens[i] = e.tokens[i] == PolishExpression::kH ? PolishExpression::kV
                                                      : PolishExpression::kH;
  }
}

bool mutate_swap_adjacent(PolishExpression &e, Rng &rng) {
  std::vector<std::size_t> sites;
  for (std::size_t i = 0; i + 1 < e.tokens.size(); ++i) {
    if (PolishExpression::isOperator(e.tokens[i]) !=
        PolishExpression::isOperator(e.tokens[i + 1])) {
      sites.push_back(i);
    }
  }
  for (std::size_t i = sites.size(); i > 1; --i) {
    std::swap(sites[i - 1], sites[rng.below(i)]);
  }
  for (std::size_t i : sites) {
    std::swap(e.tokens[i], e.tokens[i + 1]);
    if (e.isNormalized()) {
      return true;
    }
    std::swap(e.tokens[i], e.tokens[i + 1]);
  }
  return false;
}

void mutate_rotate(PolishExpression &e, Rng &rng) {
  if (e.rotated.empty()) {
    return;
  }
  const std::size_t i = rng.below(e.rotated.size());
  e.rotated[i] = !e.rotated[i];
}

PolishExpression crossover(const PolishExpression &a, const PolishExpression &b,
                           Rng &rng) {
  const std::size_t k = a.operands();
  std::vector<int> orderA;
  std::vector<int> orderB;
  for (int t : a.tokens) {
    if (!PolishExpression::isOperator(t)) {
      orderA.push_back(t);
    }
  }
  for (int t : b.tokens) {
    if (!PolishExpression::isOperator(t)) {
      orderB.push_back(t);
    }
  }
  const std::size_t cut = rng.below(k + 1);
  std::vector<bool> taken(k, false);
  std::vector<int> order;
  PolishExpression child;
  child.rotated.resize(k);
  for (std::size_t i = 0; i < cut; ++i) {
    const int op = orderA[i];
    order.push_back(op);
    taken[static_cast<std::size_t>(op)] = true;
    child.rotated[static_cast<std::size_t>(op)] =
        a.rotated[static_cast<std::size_t>(op)];
  }
  for (int op : orderB) {
    if (!taken[static_cast<std::size_t>(op)]) {
      order.push_back(op);
      child.rotated[static_cast<std::size_t>(op)] =
          b.rotated[static_cast<std::size_t>(op)];
    }
  }
  std::size_t next = 0;
  child.tokens.reserve(a.tokens.size());
  for (int t : a.tokens) {
    child.tokens.push_back(PolishExpression::isOperator(t) ? t : order[next++]);
  }
  return child;
}

Floorplan decode(const PolishExpression &e, const std::vector<std::size_t> &ids,
                 const std::vector<std::pair<double, double>> &dims) {
  const std::size_t k = e.operands();
  if (!e.isNormalized() || ids.size() != k || dims.size() != k) {
    throw FormatError("cannot decode a malformed slicing expression");
  }
  struct Node {
    double w = 0.0;
    double h = 0.0;
    int token = 0;
    int left = -1;
    int right = -1;
  };
  std::vector<Node> nodes;
  nodes.reserve(e.tokens.size());
  std::vector<int> stack;
  for (int t : e.tokens) {
    Node n;
    n.token = t;
    if (PolishExpression::isOperator(t)) {
      n.right = stack.back();
      stack.pop_back();
      n.left = stack.back();
      stack.pop_back();
      const Node &l = nodes[static_cast<std::size_t>(n.left)];
      const Node &r = nodes[static_cast<std::size_t>(n.right)];
      if (t == PolishExpression::kV) {
        n.w = l.w + r.w;
        n.h = std::max(l.h, r.h);
      } else {
        n.w = std::max(l.w, r.w);
        n.h = l.h + r.h;
      }
    } else {
      const auto idx = static_cast<std::size_t>(t);
      n.w = e.rotated[idx] ? dims[idx].second : dims[idx].first;
      n.h = e.rotated[idx] ? dims[idx].first : dims[idx].second;
    }
    nodes.push_back(n);
    stack.push_back(static_cast<int>(nodes.size() - 1));
  }

  Floorplan fp;
  const Node &root = nodes[static_cast<std::size_t>(stack.back())];
  fp.chipWidth = root.w;
  fp.chipHeight = root.h;

  // top-down placement: left/bottom child at the slice origin
  std::vector<std::tuple<int, double, double>> work{{stack.back(), 0.0, 0.0}};
  while (!work.empty()) {
    auto [idx, x, y] = work.back();
    work.pop_back();
    const Node &n = nodes[static_cast<std::size_t>(idx)];
    if (!PolishExpression::isOperator(n.token)) {
      fp.blocks[ids[static_cast<std::size_t>(n.token)]] = Rect{x, y, n.w, n.h};
      continue;
    }
    const Node &l = nodes[static_cast<std::size_t>(n.left)];
    work.emplace_back(n.left, x, y);
    if (n.token == PolishExpression::kV) {
      work.emplace_back(n.right, x + l.w, y);
    } else {
      work.emplace_back(n.right, x, y + l.h);
    }
  }
  return fp;
}

} // namespace thermsched
