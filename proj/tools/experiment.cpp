#include "experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "knockout/random.hpp"

namespace knockout::cli {

namespace {

SeedAssignment top_seeds(int s) {
  std::vector<PlayerId> holders(s);
  std::iota(holders.begin(), holders.end(), 0);
  return SeedAssignment(std::move(holders));
}

}  // namespace

TfpInstance experiment_instance(const ExperimentConfig& config, int trial, PlayerId target) {
  RandomModelConfig model{config.model, config.n, config.p, {},
                          derive_seed(config.seed, static_cast<std::uint64_t>(trial))};
  return TfpInstance{sample_tournament(model), top_seeds(config.s), target};
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
  if (config.trials < 0) throw std::invalid_argument("trials must be non-negative");
  if (config.target && (*config.target < 0 || *config.target >= config.n))
    throw std::invalid_argument("target out of range");
  // Fail on bad parameters before spawning workers.
  experiment_instance(config, 0, 0).validate();

  std::vector<PlayerId> targets;
  if (config.target) {
    targets.push_back(*config.target);
  } else {
    targets.resize(config.n);
    std::iota(targets.begin(), targets.end(), 0);
  }

  std::vector<ExperimentRow> rows(static_cast<std::size_t>(config.trials) * targets.size());
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run_trials = [&] {
    for (int t = next++; t < config.trials; t = next++) {
      const std::uint64_t trial_seed = derive_seed(config.seed, static_cast<std::uint64_t>(t));
      TfpInstance inst = experiment_instance(config, t, 0);
      for (std::size_t k = 0; k < targets.size(); ++k) {
        inst.target = targets[k];
        SolveOptions opts = config.solve;
        opts.rng_seed = derive_seed(trial_seed, static_cast<std::uint64_t>(targets[k]));
        const SolveOutcome outcome = solve(inst, config.algo, opts);
        rows[t * targets.size() + k] = {t, targets[k], outcome.bracket.has_value(), trial_seed};
      }
    }
  };

  auto worker = [&] {
    try {
      run_trials();
    } catch (...) {
      const std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = config.trials;
    }
  };

  int threads = config.threads > 0 ? config.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, std::max(1, config.trials));
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_experiment_csv(std::ostream& out, const ExperimentConfig& config,
                          const std::vector<ExperimentRow>& rows) {
  out << "n,s,model,p,trial,target,success,seed\n";
  for (const ExperimentRow& r : rows)
    out << config.n << ',' << config.s << ',' << to_string(config.model) << ',' << config.p << ','
        << r.trial << ',' << r.target << ',' << (r.success ? 1 : 0) << ',' << r.seed << '\n';
}

}  // namespace knockout::cli
