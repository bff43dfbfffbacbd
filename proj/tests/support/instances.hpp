#pragma once

#include <vector>

#include "knockout/random.hpp"
#include "knockout/tournament.hpp"

namespace knockout::testing {

/// Uniform coin per unordered pair.
TournamentGraph random_graph(int n, Rng& rng);

/// Every tournament on n players, indexed by the bits of `code` over the
/// pairs (i < j) in lexicographic order; bit set means i beats j.
TournamentGraph graph_from_code(int n, unsigned code);
int pair_count(int n);

/// s distinct holders in random rank order.
SeedAssignment random_seeds(int n, int s, Rng& rng);

/// Random power of two in {0, 2, 4, ..., n/2}.
int random_seed_count(int n, Rng& rng);

TfpInstance random_instance(int n, int s, Rng& rng);

/// Relabels players by a uniform random permutation.
TfpInstance shuffled_labels(const TfpInstance& instance, Rng& rng);

/// s = 2 with the target seeded and a king, outdegree >= n/2 + 1. Roughly one
/// draw in four is a special graph instead: outdegree n/2 with the other seed
/// beating the target or at the pivot, or outdegree n/2 + 1.
TfpInstance random_king_instance(int n, Rng& rng);

/// s = 2, target a superking, seeds placed anywhere.
TfpInstance random_superking_instance(int n, Rng& rng);

/// Target an ultraking, random seed count.
TfpInstance random_ultraking_instance(int n, Rng& rng);

}  // namespace knockout::testing
