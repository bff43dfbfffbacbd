#include "support/instances.hpp"

#include <numeric>

#include "knockout/structural.hpp"

namespace knockout::testing {

namespace {

std::vector<PlayerId> iota_players(int n) {
  std::vector<PlayerId> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// Target 0 beats 1..a and loses to the rest; every beater is then given at
// least `cover` beaters inside 1..a by flipping random edges.
TournamentGraph graph_with_cover(int n, int a, int cover, Rng& rng) {
  TournamentGraph g = random_graph(n, rng);
  for (PlayerId p = 1; p < n; ++p) p <= a ? g.set_winner(0, p) : g.set_winner(p, 0);
  for (PlayerId b = a + 1; b < n; ++b) {
    std::vector<PlayerId> losers;
    int have = 0;
    for (PlayerId p = 1; p <= a; ++p) {
      if (g.beats(p, b))
        ++have;
      else
        losers.push_back(p);
    }
    shuffle(std::span<PlayerId>(losers), rng);
    for (std::size_t i = 0; have < cover; ++i, ++have) g.set_winner(losers[i], b);
  }
  return g;
}

}  // namespace

TournamentGraph random_graph(int n, Rng& rng) {
  TournamentGraph g(n);
  for (PlayerId i = 0; i < n; ++i)
    for (PlayerId j = i + 1; j < n; ++j)
      if (rng() & 1) g.set_winner(j, i);
  return g;
}

int pair_count(int n) { return n * (n - 1) / 2; }

TournamentGraph graph_from_code(int n, unsigned code) {
  TournamentGraph g(n);
  int bit = 0;
  for (PlayerId i = 0; i < n; ++i)
    for (PlayerId j = i + 1; j < n; ++j, ++bit)
      if (!((code >> bit) & 1u)) g.set_winner(j, i);
  return g;
}

SeedAssignment random_seeds(int n, int s, Rng& rng) {
  auto players = iota_players(n);
  shuffle(std::span<PlayerId>(players), rng);
  players.resize(s);
  return SeedAssignment(players);
}

int random_seed_count(int n, Rng& rng) {
  std::vector<int> options{0};
  for (int s = 2; s <= n / 2; s *= 2) options.push_back(s);
  return options[uniform_below(rng, options.size())];
}

TfpInstance random_instance(int n, int s, Rng& rng) {
  return TfpInstance{random_graph(n, rng), random_seeds(n, s, rng),
                     static_cast<PlayerId>(uniform_below(rng, n))};
}

TfpInstance shuffled_labels(const TfpInstance& instance, Rng& rng) {
  const int n = instance.size();
  auto perm = iota_players(n);
  shuffle(std::span<PlayerId>(perm), rng);
  TournamentGraph g(n);
  for (PlayerId i = 0; i < n; ++i)
    for (PlayerId j = i + 1; j < n; ++j)
      instance.graph.beats(i, j) ? g.set_winner(perm[i], perm[j]) : g.set_winner(perm[j], perm[i]);
  std::vector<PlayerId> holders;
  for (PlayerId h : instance.seeds.holders()) holders.push_back(perm[h]);
  return TfpInstance{g, SeedAssignment(holders), perm[instance.target]};
}

TfpInstance random_king_instance(int n, Rng& rng) {
  if (uniform_below(rng, 4) == 0) {
    // Special graph with outdegree n/2 (other seed in B or at y) or n/2 + 1
    // (other seed anywhere).
    const int a_size = n / 2 + (n >= 8 ? static_cast<int>(uniform_below(rng, 2)) : 0);
    SeedPlan plan = (rng() & 1) ? SeedPlan::kTargetAndBeater : SeedPlan::kTargetAndPivot;
    if (a_size > n / 2 && uniform_below(rng, 2) == 0) plan = SeedPlan::kTargetAndOtherBeaten;
    TfpInstance inst = build_special_tournament(n, a_size, plan).instance;
    // Edges inside A and inside B are free.
    for (PlayerId i = 1; i < n; ++i)
      for (PlayerId j = i + 1; j < n; ++j)
        if ((i <= a_size) == (j <= a_size) && (rng() & 1)) inst.graph.set_winner(j, i);
    if (plan == SeedPlan::kTargetAndBeater) {
      const PlayerId z =
          a_size + 1 + static_cast<PlayerId>(uniform_below(rng, n - a_size - 1));
      inst.seeds = SeedAssignment({0, z});
    } else if (plan == SeedPlan::kTargetAndOtherBeaten) {
      const PlayerId w = 2 + static_cast<PlayerId>(uniform_below(rng, a_size - 1));
      inst.seeds = SeedAssignment({0, w});
    }
    if (rng() & 1) inst.seeds = SeedAssignment({inst.seeds.holder(2), inst.seeds.holder(1)});
    return shuffled_labels(inst, rng);
  }
  const int a = n / 2 + 1 + static_cast<int>(uniform_below(rng, n / 2 - 1));
  const PlayerId other = 1 + static_cast<PlayerId>(uniform_below(rng, n - 1));
  std::vector<PlayerId> holders{0, other};
  if (rng() & 1) std::swap(holders[0], holders[1]);
  TfpInstance inst{graph_with_cover(n, a, 1, rng), SeedAssignment(holders), 0};
  return shuffled_labels(inst, rng);
}

TfpInstance random_superking_instance(int n, Rng& rng) {
  const int cover = floor_log2(n);
  const int a = cover + static_cast<int>(uniform_below(rng, n - cover));
  TfpInstance inst{graph_with_cover(n, a, cover, rng), random_seeds(n, 2, rng), 0};
  return shuffled_labels(inst, rng);
}

TfpInstance random_ultraking_instance(int n, Rng& rng) {
  const int a = n / 2 + static_cast<int>(uniform_below(rng, n / 2));
  TfpInstance inst{graph_with_cover(n, a, n / 2, rng),
                   random_seeds(n, random_seed_count(n, rng), rng), 0};
  return shuffled_labels(inst, rng);
}

}  // namespace knockout::testing
