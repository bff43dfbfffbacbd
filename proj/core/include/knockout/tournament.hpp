#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace knockout {

using PlayerId = int;

constexpr bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

/// floor(log2(v)) for v >= 1.
constexpr int floor_log2(int v) {
  int r = 0;
  while (v > 1) {
    v >>= 1;
    ++r;
  }
  return r;
}

/// Complete antisymmetric win relation over players 0..n-1.
class TournamentGraph {
 public:
  TournamentGraph() = default;

  /// Transitive tournament: lower id beats higher id.
  explicit TournamentGraph(int n);

  int size() const noexcept { return n_; }

  bool beats(PlayerId winner, PlayerId loser) const {
    return wins_[static_cast<std::size_t>(winner) * n_ + loser] != 0;
  }

  /// Orients the edge between two distinct players.
  void set_winner(PlayerId winner, PlayerId loser);

  int outdegree(PlayerId player) const;

  /// Players beaten by `player`, ascending.
  std::vector<PlayerId> beaten_by(PlayerId player) const;
  /// Players who beat `player`, ascending.
  std::vector<PlayerId> beaters_of(PlayerId player) const;

  /// Subtournament on `players`; new id i corresponds to players[i].
  TournamentGraph induced(std::span<const PlayerId> players) const;

  bool operator==(const TournamentGraph&) const = default;

 private:
  int n_ = 0;
  std::vector<std::uint8_t> wins_;
};

/// Seed holders in rank order: holders()[r - 1] holds seed r.
class SeedAssignment {
 public:
  SeedAssignment() = default;
  /// Throws std::invalid_argument unless the count is 0 or a power of two
  /// >= 2 and the holders are distinct and non-negative.
  explicit SeedAssignment(std::vector<PlayerId> holders);

  int count() const noexcept { return static_cast<int>(holders_.size()); }
  bool empty() const noexcept { return holders_.empty(); }
  std::span<const PlayerId> holders() const noexcept { return holders_; }
  PlayerId holder(int rank) const { return holders_.at(rank - 1); }

  /// Seed rank of `player`, or 0 when unseeded.
  int rank_of(PlayerId player) const;

  /// Throws std::invalid_argument unless every holder is in [0, n) and
  /// count() <= n / 2.
  void validate_for(int n) const;

  bool operator==(const SeedAssignment&) const = default;

 private:
  std::vector<PlayerId> holders_;
};

/// Leaf placement of a balanced match tree. Positions 2i and 2i+1 meet in
/// round one; winners of adjacent pairs meet in round two, and so on.
class Bracket {
 public:
  Bracket() = default;
  /// Throws std::invalid_argument unless `leaves` is a permutation of
  /// 0..n-1 with n a power of two.
  explicit Bracket(std::vector<PlayerId> leaves);

  int size() const noexcept { return static_cast<int>(leaves_.size()); }
  std::span<const PlayerId> leaves() const noexcept { return leaves_; }
  PlayerId at(int position) const { return leaves_.at(position); }

  /// Inverse permutation: position of each player.
  std::vector<int> positions() const;

  bool operator==(const Bracket&) const = default;

 private:
  std::vector<PlayerId> leaves_;
};

/// Graph, seeds and the player we want to win.
struct TfpInstance {
  TournamentGraph graph;
  SeedAssignment seeds;
  PlayerId target = 0;

  int size() const noexcept { return graph.size(); }
  /// Throws std::invalid_argument on any broken invariant.
  void validate() const;

  bool operator==(const TfpInstance&) const = default;
};

/// A contiguous block of leaf positions.
///
/// Level k splits the bracket into 2^k sections of width n / 2^k. Indices are
/// 0-based: section w of level k covers positions [w * width, (w + 1) * width).
/// The 1-based convention "positions (w-1) * 2^(log n - k) + 1 .. w * 2^(log n - k)"
/// maps onto this by w_ours = w - 1 and position_ours = position - 1; this is
/// the only place the conversion happens.
struct SectionRef {
  int level = 0;
  int index = 0;

  int width(int n) const { return n >> level; }
  int first(int n) const { return index * width(n); }
  int last(int n) const { return first(n) + width(n); }  // exclusive
  bool contains(int n, int position) const {
    return position >= first(n) && position < last(n);
  }

  static SectionRef of(int n, int level, int position) {
    return SectionRef{level, position / (n >> level)};
  }
};

/// True iff for every power of two l with 2 <= l <= s, each level-log(l)
/// section holds exactly one of the top-l seeds. Always true for s = 0.
/// Throws std::invalid_argument if a seed holder lies outside the bracket or
/// s exceeds the bracket size.
bool is_valid_bracket(const Bracket& bracket, const SeedAssignment& seeds);

struct Match {
  PlayerId first = 0;
  PlayerId second = 0;
  PlayerId winner = 0;
  bool operator==(const Match&) const = default;
};

/// rounds[r] lists the matches of round r + 1.
using MatchLog = std::vector<std::vector<Match>>;

struct ReplayResult {
  PlayerId winner = 0;
  MatchLog log;
};

/// Plays the bracket out; throws std::invalid_argument on a size mismatch.
ReplayResult replay_bracket(const Bracket& bracket, const TournamentGraph& graph);

/// Winner only; avoids building the log.
PlayerId bracket_winner(std::span<const PlayerId> leaves, const TournamentGraph& graph);

/// Arranges `players` so that the seeded subset `seed_order` (listed strongest
/// first) is spread validly: the present seeds are split alternately between
/// halves (even positions in the sorted list go left), recursively; unseeded
/// players fill the remaining slots lowest id first.
/// Throws std::invalid_argument if |players| is not a power of two or a
/// seeded player is missing from `players`.
std::vector<PlayerId> any_valid_bracket(std::span<const PlayerId> players,
                                        std::span<const PlayerId> seed_order);

/// Same contract, over all players 0..n-1.
Bracket any_valid_bracket(int n, const SeedAssignment& seeds);

/// Uniformly reshuffled variant: every rank block {1,2}, {3,4}, {5..8}, ...
/// is split into a random balanced half at each level and unseeded players
/// are placed in random order.
std::vector<PlayerId> random_valid_bracket(std::span<const PlayerId> players,
                                           std::span<const PlayerId> seed_order,
                                           std::mt19937_64& rng);

/// Reorders children so that at every internal node the left subtree holds
/// the smaller minimum id. Two brackets describe the same unordered match tree
/// iff their canonical forms are equal.
Bracket canonical_form(const Bracket& bracket);

}  // namespace knockout
