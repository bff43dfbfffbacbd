#include "knockout/matching.hpp"

#include <algorithm>

namespace knockout {

namespace {

class Kuhn {
 public:
  Kuhn(int right_count, std::vector<std::vector<int>> adjacency)
      : adjacency_(std::move(adjacency)), match_of_right_(right_count, -1), visited_(right_count, 0) {}

  bool augment(int u) {
    for (int v : adjacency_[u]) {
      if (visited_[v]) continue;
      visited_[v] = 1;
      if (match_of_right_[v] < 0 || augment(match_of_right_[v])) {
        match_of_right_[v] = u;
        return true;
      }
    }
    return false;
  }

  void reset_visits() { std::fill(visited_.begin(), visited_.end(), 0); }
  const std::vector<int>& match_of_right() const { return match_of_right_; }

 private:
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> match_of_right_;
  std::vector<char> visited_;
};

}  // namespace

Matching max_bipartite_matching(std::span<const int> left, std::span<const int> right,
                                const std::function<bool(int, int)>& edge) {
  const int nl = static_cast<int>(left.size());
  const int nr = static_cast<int>(right.size());
  std::vector<std::vector<int>> adjacency(nl);
  for (int u = 0; u < nl; ++u)
    for (int v = 0; v < nr; ++v)
      if (edge(left[u], right[v])) adjacency[u].push_back(v);

  Kuhn kuhn(nr, std::move(adjacency));
  for (int u = 0; u < nl; ++u) {
    kuhn.reset_visits();
    kuhn.augment(u);
  }

  std::vector<int> right_of_left(nl, -1);
  for (int v = 0; v < nr; ++v)
    if (kuhn.match_of_right()[v] >= 0) right_of_left[kuhn.match_of_right()[v]] = v;

  Matching result;
  for (int u = 0; u < nl; ++u)
    if (right_of_left[u] >= 0) result.pairs.emplace_back(left[u], right[right_of_left[u]]);
  return result;
}

}  // namespace knockout
