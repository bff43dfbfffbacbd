#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "knockout/counting.hpp"
#include "knockout/matching.hpp"
#include "knockout/tournament.hpp"

namespace knockout {

enum class RandomModel {
  kGeneralized,  // i beats j with probability probs[i][j]
  kCondorcet,    // lower id wins with probability 1 - p
  kUniform,      // every match a fair coin
};

std::string_view to_string(RandomModel model);
std::optional<RandomModel> parse_random_model(std::string_view name);

struct RandomModelConfig {
  RandomModel model = RandomModel::kUniform;
  int n = 0;
  /// Lower bound on every win probability, in [0, 1/2].
  double p = 0.5;
  /// Generalized model only. When empty, each p_ij (i < j) is itself drawn
  /// uniformly from [p, 1 - p] using the same generator.
  std::vector<std::vector<double>> probs;
  std::uint64_t rng_seed = 0;
};

/// One independent draw per pair i < j: i beats j iff a 53-bit uniform in
/// [0, 1) falls below p_ij. Same config, same graph. Throws
/// std::invalid_argument on an invalid probability matrix or parameters.
TournamentGraph sample_tournament(const RandomModelConfig& config);

struct NonseededOptions {
  /// Restarts of the randomized round-by-round stage.
  int restarts = 200;
  std::uint64_t rng_seed = 0;
  /// Exact DP fallback runs for n up to this size.
  int exact_max_n = kCountingMaxN;
};

/// Winning bracket for `target` ignoring seeds, or nullopt. Stages, first
/// success wins: target beats everyone; king with outdegree >= n/2 via
/// matchings; randomized matching rounds with restarts; exact DP for small n.
/// Every returned bracket is replay-checked.
std::optional<Bracket> fix_nonseeded(const TournamentGraph& graph, PlayerId target,
                                     const NonseededOptions& options = {});

struct SpareResult {
  PlayerId spare = 0;
  /// The other n players in leaf order, ids of the (n + 1)-player graph.
  std::vector<PlayerId> leaves;
};

/// For a graph on 2^r + 1 players: a player y beaten by the target such that
/// the target wins a non-seeded bracket on everyone else. Candidates are tried
/// by descending outdegree (then ascending id).
std::optional<SpareResult> fix_nonseeded_with_spare(const TournamentGraph& graph, PlayerId target,
                                                    const NonseededOptions& options = {});

/// Record of one seed block placement in fix_seeded_random.
struct SeedBlockStage {
  int level = 0;
  std::vector<PlayerId> block;          // seed holders placed at this stage
  std::vector<SectionRef> free_sections;
  std::vector<std::pair<PlayerId, int>> edges;  // (seed holder, free section slot)
  Matching matching;                    // (seed holder, free section slot)
  std::vector<std::pair<PlayerId, PlayerId>> opponents;  // (seed holder, first opponent)
};

/// Randomized seeded fixer for s = n/2; fewer seeds are padded with unseeded
/// players other than the target, and s = 0 goes straight to fix_nonseeded.
/// The unseeded players (plus the target, if seeded) are arranged on the odd
/// positions by the non-seeded fixer, then seed blocks {1,2}, {3,4}, {5..8},
/// ... are matched to free sections so that every seed loses in round one.
/// Returns nullopt when a stage has no perfect matching or the non-seeded
/// step fails; `trace`, when given, receives one entry per completed stage.
std::optional<Bracket> fix_seeded_random(const TfpInstance& instance,
                                         const NonseededOptions& options = {},
                                         std::vector<SeedBlockStage>* trace = nullptr);

struct MatchingExperiment {
  int m = 0;
  double delta = 0;
  int trials = 0;
  int successes = 0;
  double frequency = 0;
  /// 1 - delta^(m/4).
  double lower_bound = 0;
  /// delta^(m/8) <= 1/m.
  bool hypothesis_holds = false;
  /// Binomial standard error at the lower bound: sqrt(q (1 - q) / trials).
  double std_error = 0;
};

/// Samples `trials` m-by-m bipartite graphs with independent edges of
/// probability 1 - delta and counts those with a perfect matching. Trial t
/// uses derive_seed(rng_seed, t).
MatchingExperiment matching_probability_experiment(int m, double delta, int trials,
                                                   std::uint64_t rng_seed);

}  // namespace knockout
