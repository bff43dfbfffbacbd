#include "solve.hpp"

#include <array>
#include <utility>

#include "knockout/probabilistic.hpp"
#include "knockout/structural.hpp"

namespace knockout::cli {

namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 6> kNames{{
    {Algorithm::kAuto, "auto"},
    {Algorithm::kKing, "king"},
    {Algorithm::kSuperking, "superking"},
    {Algorithm::kUltraking, "ultraking"},
    {Algorithm::kRandom, "random"},
    {Algorithm::kDp, "dp"},
}};

bool beats_everyone(const TfpInstance& inst) {
  return inst.graph.outdegree(inst.target) == inst.size() - 1;
}

std::optional<Bracket> run_random(const TfpInstance& inst, const SolveOptions& o) {
  const NonseededOptions opts{o.restarts, o.rng_seed, o.max_n};
  if (inst.seeds.empty()) return fix_nonseeded(inst.graph, inst.target, opts);
  return fix_seeded_random(inst, opts);
}

SolveOutcome run_dp(const TfpInstance& inst, const SolveOptions& o) {
  SolveOutcome out;
  out.method = "dp";
  out.bracket = extract_winning_bracket(inst, CountingOptions{ConvolutionMode::kFast, o.max_n});
  out.proved_impossible = !out.bracket;
  return out;
}

// Runs a structural fixer, turning an unmet precondition into a note.
template <class Fixer>
SolveOutcome run_structural(const TfpInstance& inst, std::string_view name, Fixer fixer) {
  SolveOutcome out;
  out.method = name;
  try {
    out.bracket = fixer(inst, FixerOptions{});
  } catch (const PreconditionError& e) {
    out.note = e.what();
  }
  return out;
}

SolveOutcome solve_auto(const TfpInstance& inst, const SolveOptions& o) {
  if (beats_everyone(inst)) return {any_valid_bracket(inst.size(), inst.seeds), "trivial", false, {}};

  const PlayerProfile profile = classify_player(inst.graph, inst.target);
  if (profile.is_ultraking) {
    SolveOutcome out = run_structural(inst, "ultraking", fix_ultraking);
    if (out.bracket) return out;
  }
  if (inst.seeds.count() == 2) {
    if (profile.is_king) {
      SolveOutcome out = run_structural(inst, "king", fix_king_two_seeds);
      if (out.bracket) return out;
    }
    if (profile.is_superking) {
      SolveOutcome out = run_structural(inst, "superking", fix_superking_two_seeds);
      if (out.bracket) return out;
    }
  }
  if (auto b = run_random(inst, o)) return {std::move(b), "random", false, {}};
  if (inst.size() <= o.max_n) return run_dp(inst, o);
  return {};
}

}  // namespace

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (const auto& [algo, text] : kNames)
    if (text == name) return algo;
  return std::nullopt;
}

std::string_view to_string(Algorithm algo) {
  for (const auto& [a, text] : kNames)
    if (a == algo) return text;
  return "?";
}

bool is_verified_win(const TfpInstance& instance, const Bracket& bracket) {
  return bracket.size() == instance.size() && is_valid_bracket(bracket, instance.seeds) &&
         bracket_winner(bracket.leaves(), instance.graph) == instance.target;
}

SolveOutcome solve(const TfpInstance& instance, Algorithm algo, const SolveOptions& options) {
  instance.validate();
  SolveOutcome out;
  switch (algo) {
    case Algorithm::kAuto:
      out = solve_auto(instance, options);
      break;
    case Algorithm::kKing:
      out = run_structural(instance, "king", fix_king_two_seeds);
      break;
    case Algorithm::kSuperking:
      out = run_structural(instance, "superking", fix_superking_two_seeds);
      break;
    case Algorithm::kUltraking:
      out = run_structural(instance, "ultraking", fix_ultraking);
      break;
    case Algorithm::kRandom:
      out.method = "random";
      out.bracket = run_random(instance, options);
      break;
    case Algorithm::kDp:
      out = run_dp(instance, options);
      break;
  }
  if (out.bracket && !is_verified_win(instance, *out.bracket))
    throw std::logic_error("fixer '" + out.method + "' returned an unverified bracket");
  return out;
}

}  // namespace knockout::cli
