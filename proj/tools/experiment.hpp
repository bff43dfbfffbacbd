#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "knockout/probabilistic.hpp"
#include "solve.hpp"

namespace knockout::cli {

struct ExperimentConfig {
  RandomModel model = RandomModel::kUniform;
  int n = 16;
  int s = 0;
  double p = 0.5;
  int trials = 10;
  std::uint64_t seed = 0;
  Algorithm algo = Algorithm::kRandom;
  SolveOptions solve;              // rng_seed is overwritten per (trial, target)
  std::optional<PlayerId> target;  // every player when unset
  int threads = 0;                 // 0: hardware concurrency
};

struct ExperimentRow {
  int trial = 0;
  PlayerId target = 0;
  bool success = false;
  std::uint64_t seed = 0;  // trial seed; regenerates the tournament
};

/// Trial t draws its tournament from derive_seed(config.seed, t); players
/// 0..s-1 hold seeds 1..s. The fixer for target x in that trial is seeded
/// with derive_seed(trial seed, x). Rows come back ordered by (trial, target)
/// whatever the thread count. Success means a bracket that passed validity
/// and replay.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

/// The instance of one trial, as run_experiment builds it.
TfpInstance experiment_instance(const ExperimentConfig& config, int trial, PlayerId target);

void write_experiment_csv(std::ostream& out, const ExperimentConfig& config,
                          const std::vector<ExperimentRow>& rows);

}  // namespace knockout::cli
