#include "support/oracles.hpp"

#include <algorithm>
#include <bit>
#include <vector>

namespace knockout::testing {

bool valid_by_meeting_rounds(std::span<const PlayerId> leaves, const SeedAssignment& seeds) {
  const int n = static_cast<int>(leaves.size());
  const int depth_bits = std::countr_zero(static_cast<unsigned>(n));
  std::vector<int> pos(n);
  for (int p = 0; p < n; ++p) pos[leaves[p]] = p;
  for (int j = 2; j <= seeds.count(); ++j) {
    const int limit = std::countr_zero(std::bit_ceil(static_cast<unsigned>(j)));
    for (int i = 1; i < j; ++i) {
      const unsigned diff = static_cast<unsigned>(pos[seeds.holder(i)] ^ pos[seeds.holder(j)]);
      const int lca_depth = depth_bits - std::bit_width(diff);
      if (lca_depth >= limit) return false;
    }
  }
  return true;
}

PlayerId fold_winner(std::span<const PlayerId> leaves, const TournamentGraph& graph) {
  std::vector<PlayerId> round(leaves.begin(), leaves.end());
  while (round.size() > 1) {
    std::vector<PlayerId> next;
    for (std::size_t i = 0; i < round.size(); i += 2)
      next.push_back(graph.beats(round[i], round[i + 1]) ? round[i] : round[i + 1]);
    round = std::move(next);
  }
  return round.front();
}

bool is_verified_win(std::span<const PlayerId> leaves, const TfpInstance& instance) {
  const int n = instance.size();
  if (static_cast<int>(leaves.size()) != n) return false;
  std::vector<PlayerId> sorted(leaves.begin(), leaves.end());
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i)
    if (sorted[i] != i) return false;
  return valid_by_meeting_rounds(leaves, instance.seeds) &&
         fold_winner(leaves, instance.graph) == instance.target;
}

}  // namespace knockout::testing
