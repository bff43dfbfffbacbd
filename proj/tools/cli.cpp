#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "experiment.hpp"
#include "knockout/instance_io.hpp"
#include "knockout/reductions.hpp"
#include "knockout/structural.hpp"
#include "solve.hpp"

namespace knockout::cli {

namespace {

// Thrown for bad input files and flag values; becomes exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string in;
  std::string out;
  std::string bracket;
  std::string algo = "auto";
  std::string model = "uniform";
  std::string kind;
  std::string counterexample;
  int n = 8;
  int s = 0;
  double p = 0.5;
  int trials = 10;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> shuffle;
  int restarts = 200;
  int max_n_override = 0;
  int target = 0;
  std::optional<int> experiment_target;
  int threads = 0;
  bool naive = false;
};

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(file), {}};
}

template <class Parse>
auto parse_file(const std::string& path, Parse parse) {
  const std::string text = read_text(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// Writes to --out when given, otherwise to the result stream.
void emit(const Flags& f, std::ostream& out, const std::string& text) {
  if (f.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(f.out, std::ios::binary);
  if (!file || !(file << text)) throw UsageError("cannot write '" + f.out + "'");
}

int max_n(const Flags& f) {
  if (f.max_n_override == 0) return kCountingMaxN;
  if (f.max_n_override < 2 || f.max_n_override > kCountingOverrideMaxN)
    throw UsageError("--max-n-override must be in [2, " + std::to_string(kCountingOverrideMaxN) + "]");
  return f.max_n_override;
}

Algorithm algorithm(const Flags& f) {
  const auto algo = parse_algorithm(f.algo);
  if (!algo) throw UsageError("unknown --algo '" + f.algo + "'");
  return *algo;
}

RandomModel model(const Flags& f) {
  const auto m = parse_random_model(f.model);
  if (!m) throw UsageError("unknown --model '" + f.model + "'");
  return *m;
}

SolveOptions solve_options(const Flags& f) { return {f.restarts, f.seed, max_n(f)}; }

int cmd_solve(const Flags& f, std::ostream& out, std::ostream& err) {
  const TfpInstance inst = parse_file(f.in, parse_instance);
  const SolveOutcome r = solve(inst, algorithm(f), solve_options(f));
  if (!r.bracket) {
    if (!r.note.empty()) err << "precondition not met: " << r.note << '\n';
    out << "NO WINNING BRACKET FOUND\n";
    if (r.proved_impossible) out << "PROVED IMPOSSIBLE\n";
    return kExitNotFound;
  }
  err << "solved by " << r.method << '\n';
  emit(f, out, format_bracket(*r.bracket));
  return kExitOk;
}

int cmd_count(const Flags& f, std::ostream& out, std::ostream&) {
  const TfpInstance inst = parse_file(f.in, parse_instance);
  const CountingOptions opts{f.naive ? ConvolutionMode::kNaive : ConvolutionMode::kFast, max_n(f)};
  const WinnerCounts counts = count_valid_winning_brackets(inst, opts);
  std::string csv = "player,count\n";
  for (std::size_t p = 0; p < counts.counts.size(); ++p)
    csv += std::to_string(p) + "," + knockout::to_string(counts.counts[p]) + "\n";
  emit(f, out, csv);
  return kExitOk;
}

int cmd_verify(const Flags& f, std::ostream& out, std::ostream&) {
  InstanceDocument doc = parse_file(f.in, parse_document);
  if (!f.bracket.empty()) {
    if (doc.bracket) throw UsageError(f.in + ": bracket given both inline and with --bracket");
    doc.bracket = parse_file(f.bracket, parse_bracket);
  }
  if (!doc.bracket) throw UsageError("no bracket: append a 'bracket' line to the input or pass --bracket");
  if (doc.bracket->size() != doc.instance.size())
    throw UsageError("bracket has " + std::to_string(doc.bracket->size()) + " players, instance has " +
                     std::to_string(doc.instance.size()));
  const bool valid = is_valid_bracket(*doc.bracket, doc.instance.seeds);
  const PlayerId winner = replay_bracket(*doc.bracket, doc.instance.graph).winner;
  out << "valid " << (valid ? "yes" : "no") << '\n'
      << "winner " << winner << '\n'
      << "target_wins " << (valid && winner == doc.instance.target ? "yes" : "no") << '\n';
  return valid ? kExitOk : kExitNotFound;
}

int cmd_gen(const Flags& f, std::ostream& out, std::ostream&) {
  TfpInstance inst;
  if (!f.counterexample.empty()) {
    const auto kind = parse_counterexample_kind(f.counterexample);
    if (!kind) throw UsageError("unknown counterexample '" + f.counterexample + "'");
    inst = make_counterexample(*kind, f.n, f.s);
  } else {
    ExperimentConfig cfg;
    cfg.model = model(f);
    cfg.n = f.n;
    cfg.s = f.s;
    cfg.p = f.p;
    cfg.seed = f.seed;
    inst = experiment_instance(cfg, 0, f.target);
    inst.validate();
  }
  emit(f, out, format_instance(inst));
  return kExitOk;
}

int cmd_reduce(const Flags& f, std::ostream& out, std::ostream&) {
  const TfpInstance source = parse_file(f.in, parse_instance);
  const ReductionOptions opts{f.shuffle};
  ReductionOutput r;
  if (f.kind == "const")
    r = reduce_to_seeded_constant(source, f.s, opts);
  else if (f.kind == "half")
    r = reduce_to_seeded_half(source, opts);
  else
    throw UsageError("--kind must be 'const' or 'half'");
  emit(f, out, format_instance(r.instance));
  return kExitOk;
}

int cmd_classify(const Flags& f, std::ostream& out, std::ostream&) {
  const TfpInstance inst = parse_file(f.in, parse_instance);
  const PlayerProfile p = classify_player(inst.graph, inst.target);
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::ostringstream text;
  text << "player " << inst.target << '\n'
       << "outdegree " << p.outdegree << '\n'
       << "king " << yn(p.is_king) << '\n'
       << "superking " << yn(p.is_superking) << '\n'
       << "ultraking " << yn(p.is_ultraking) << '\n';
  emit(f, out, text.str());
  return kExitOk;
}

int cmd_experiment(const Flags& f, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  cfg.model = model(f);
  cfg.n = f.n;
  cfg.s = f.s;
  cfg.p = f.p;
  cfg.trials = f.trials;
  cfg.seed = f.seed;
  cfg.algo = algorithm(f);
  cfg.solve = solve_options(f);
  cfg.target = f.experiment_target;
  cfg.threads = f.threads;
  const std::vector<ExperimentRow> rows = run_experiment(cfg);
  std::ostringstream csv;
  write_experiment_csv(csv, cfg, rows);
  emit(f, out, csv.str());
  std::size_t wins = 0;
  for (const ExperimentRow& r : rows) wins += r.success;
  err << "success " << wins << "/" << rows.size() << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Knockout tournament fixing: solve, count, verify and generate instances"};
  app.name("knockout");
  app.require_subcommand(1);

  auto add_in = [&](CLI::App* c) { c->add_option("--in", f.in, "instance file, '-' for stdin")->required(); };
  auto add_out = [&](CLI::App* c) { c->add_option("--out", f.out, "output file (default stdout)"); };
  auto add_cap = [&](CLI::App* c) {
    c->add_option("--max-n-override", f.max_n_override, "raise the exact DP size cap (<= 32)");
  };
  auto add_model = [&](CLI::App* c) {
    c->add_option("--n", f.n, "players");
    c->add_option("--s", f.s, "seeds, held by players 0..s-1");
    c->add_option("--p", f.p, "win probability lower bound");
    c->add_option("--model", f.model, "uniform | condorcet | generalized");
    c->add_option("--seed", f.seed, "rng seed");
  };
  auto add_solver = [&](CLI::App* c) {
    c->add_option("--algo", f.algo, "auto | king | superking | ultraking | random | dp");
    c->add_option("--restarts", f.restarts, "restarts of the randomized fixer");
    add_cap(c);
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "find a winning bracket for the target");
  add_in(solve_cmd);
  add_out(solve_cmd);
  add_solver(solve_cmd);
  solve_cmd->add_option("--seed", f.seed, "rng seed for randomized fixers");

  CLI::App* count_cmd = app.add_subcommand("count", "count valid winning brackets per player");
  add_in(count_cmd);
  add_out(count_cmd);
  add_cap(count_cmd);
  count_cmd->add_flag("--naive", f.naive, "use direct subset enumeration");

  CLI::App* verify_cmd = app.add_subcommand("verify", "check a bracket's validity and winner");
  add_in(verify_cmd);
  verify_cmd->add_option("--bracket", f.bracket, "file with a single bracket line");

  CLI::App* gen_cmd = app.add_subcommand("gen", "sample a random instance or build a counterexample");
  add_out(gen_cmd);
  add_model(gen_cmd);
  gen_cmd->add_option("--target", f.target, "target player");
  gen_cmd->add_option("--counterexample", f.counterexample, "e.g. KING_HALF_S2");

  CLI::App* reduce_cmd = app.add_subcommand("reduce", "map a non-seeded instance to a seeded one");
  add_in(reduce_cmd);
  add_out(reduce_cmd);
  reduce_cmd->add_option("--kind", f.kind, "const | half")->required();
  reduce_cmd->add_option("--s", f.s, "seed count for --kind const");
  reduce_cmd->add_option("--seed", f.shuffle, "randomize the outcomes the construction leaves free");

  CLI::App* classify_cmd = app.add_subcommand("classify", "king / superking / ultraking profile of the target");
  add_in(classify_cmd);
  add_out(classify_cmd);

  CLI::App* exp_cmd = app.add_subcommand("experiment", "Monte Carlo sweep over random tournaments");
  add_out(exp_cmd);
  add_model(exp_cmd);
  add_solver(exp_cmd);
  exp_cmd->add_option("--trials", f.trials, "number of sampled tournaments");
  exp_cmd->add_option("--target", f.experiment_target, "single target (default: every player)");
  exp_cmd->add_option("--threads", f.threads, "worker threads (default: hardware concurrency)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(f, out, err);
    if (*count_cmd) return cmd_count(f, out, err);
    if (*verify_cmd) return cmd_verify(f, out, err);
    if (*gen_cmd) return cmd_gen(f, out, err);
    if (*reduce_cmd) return cmd_reduce(f, out, err);
    if (*classify_cmd) return cmd_classify(f, out, err);
    if (*exp_cmd) return cmd_experiment(f, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace knockout::cli
