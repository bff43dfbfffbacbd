#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "knockout/counting.hpp"
#include "knockout/tournament.hpp"

namespace knockout::cli {

enum class Algorithm { kAuto, kKing, kSuperking, kUltraking, kRandom, kDp };

std::optional<Algorithm> parse_algorithm(std::string_view name);
std::string_view to_string(Algorithm algo);

struct SolveOptions {
  int restarts = 200;
  std::uint64_t rng_seed = 0;
  int max_n = kCountingMaxN;  // DP cap, also used by the random fixer's exact fallback
};

struct SolveOutcome {
  std::optional<Bracket> bracket;
  std::string method;             // stage that produced the bracket
  bool proved_impossible = false;  // the DP ran and found no winning bracket
  std::string note;               // why an explicitly requested fixer did not apply
};

/// auto: target beats all, ultraking, king / superking when s = 2, random
/// fixer, then DP when n <= max_n. Any bracket returned has been checked for
/// validity and replayed to the target here, independently of the fixer.
SolveOutcome solve(const TfpInstance& instance, Algorithm algo, const SolveOptions& options);

/// Validity plus replay winner.
bool is_verified_win(const TfpInstance& instance, const Bracket& bracket);

}  // namespace knockout::cli
