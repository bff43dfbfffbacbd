#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "knockout/tournament.hpp"

namespace knockout {

/// A fixer was called on an instance outside its guarantee. The message names
/// the failed condition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Players split around a target x: `beaten` (A) are the players x beats,
/// `beaters` (B) the players beating x. `pivot` is set when the graph is
/// special: some y in A beats all of B while B beats A \ {y}. Proofs also call
/// members of A \ {y} "w" and members of B "z".
struct KingPartition {
  PlayerId target = 0;
  std::vector<PlayerId> beaten;
  std::vector<PlayerId> beaters;
  std::optional<PlayerId> pivot;

  bool is_special() const { return pivot.has_value(); }
};

KingPartition partition_around(const TournamentGraph& graph, PlayerId target);

struct PlayerProfile {
  int outdegree = 0;
  bool is_king = false;       // every beater is beaten by someone x beats
  bool is_superking = false;  // ... by at least log n of them
  bool is_ultraking = false;  // ... by at least n / 2 of them

  bool operator==(const PlayerProfile&) const = default;
};

PlayerProfile classify_player(const TournamentGraph& graph, PlayerId target);

/// Who gets the second seed in a special tournament (the target always holds
/// seed 1 unless the plan is kNone).
enum class SeedPlan {
  kNone,
  kTargetAndOtherBeaten,  // lowest id of A \ {y}
  kTargetAndPivot,        // y
  kTargetAndBeater,       // lowest id of B
};

struct SpecialTournament {
  TfpInstance instance;
  KingPartition partition;
};

/// Special tournament on n players: x = 0, y = 1, A \ {y} = 2..a_size,
/// B = a_size+1..n-1. Edges inside A and inside B go from lower to higher id.
/// Throws std::invalid_argument for a_size outside [1, n-2] or an infeasible
/// seed plan.
SpecialTournament build_special_tournament(int n, int a_size, SeedPlan plan);

struct FixerOptions {
  /// When set, choices the construction leaves open (pairing order within
  /// groups, matching scan order, placement of finished sub-brackets) are
  /// randomized from this seed instead of taken in ascending id order.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Two seeds, target seeded, king, and either outdegree >= n/2 + 1 or a
/// special graph with outdegree n/2 whose other seed is in B or is y.
/// Builds the bracket round by round from maximum A-to-B matchings.
/// Throws PreconditionError otherwise; the result is replay-checked.
Bracket fix_king_two_seeds(const TfpInstance& instance, const FixerOptions& options = {});

/// Two seeds, target a superking (seeded or not).
Bracket fix_superking_two_seeds(const TfpInstance& instance, const FixerOptions& options = {});

/// Any number of seeds, target an ultraking. All beaters are eliminated in
/// round one; later rounds are any valid arrangement of the survivors.
Bracket fix_ultraking(const TfpInstance& instance, const FixerOptions& options = {});

/// Instances on which the target is provably not a knockout winner.
enum class CounterexampleKind {
  kKingN2Unseeded,  // outdegree n-2 king outside the top two seeds (any s)
  kKingHalfS2,      // seeded king with outdegree n/2, s = 2
  kKingN2TopSeed,   // outdegree n-2 king holding a top-two seed, s >= 4
  kSuperkingS4,     // superking among the top four seeds, s >= 4
  kUltrakingTight,  // ultraking threshold lowered to n/2 - 1, s = n/2
};

inline constexpr CounterexampleKind kAllCounterexampleKinds[] = {
    CounterexampleKind::kKingN2Unseeded, CounterexampleKind::kKingHalfS2,
    CounterexampleKind::kKingN2TopSeed, CounterexampleKind::kSuperkingS4,
    CounterexampleKind::kUltrakingTight};

/// CLI spelling, e.g. "KING_N2_UNSEEDED".
std::string_view to_string(CounterexampleKind kind);
std::optional<CounterexampleKind> parse_counterexample_kind(std::string_view name);

/// Smallest n for which the construction exists.
int min_counterexample_size(CounterexampleKind kind);

/// `seeds` = 0 picks the kind's default (2, 2, 4, 4 and n/2 respectively).
/// Throws std::invalid_argument when n or the seed count does not fit the kind.
TfpInstance make_counterexample(CounterexampleKind kind, int n, int seeds = 0);

}  // namespace knockout
