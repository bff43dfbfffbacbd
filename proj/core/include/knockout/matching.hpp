#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "knockout/tournament.hpp"

namespace knockout {

struct Matching {
  /// (left id, right id) pairs, in order of the left side's input order.
  std::vector<std::pair<int, int>> pairs;

  int size() const noexcept { return static_cast<int>(pairs.size()); }
};

/// Maximum-cardinality bipartite matching by augmenting paths (Kuhn).
///
/// Left vertices are processed in input order and each augmenting-path search
/// scans right vertices in input order, so the result is a deterministic
/// function of the two sequences. Callers pass ascending ids for the canonical
/// choice, or a shuffled order for a randomized one.
Matching max_bipartite_matching(std::span<const int> left, std::span<const int> right,
                                const std::function<bool(int, int)>& edge);

}  // namespace knockout
