#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "knockout/count.hpp"
#include "knockout/tournament.hpp"

namespace knockout {

using SubsetMask = std::uint64_t;

constexpr int kCountingMaxN = 16;
/// Hard ceiling reachable with an explicit override. Dense tables at this
/// size need 2^32 entries, so expect to run out of memory well before it.
constexpr int kCountingOverrideMaxN = 32;

/// Integer-valued function on subsets of {0, ..., ground_size - 1} whose
/// nonzero entries all sit on subsets of one cardinality, `rank()`.
/// Stored densely, indexed by bitmask.
class SetFunction {
 public:
  SetFunction(int ground_size, int rank);

  int ground_size() const noexcept { return ground_size_; }
  int rank() const noexcept { return rank_; }

  Wide at(SubsetMask subset) const { return values_[subset]; }
  /// Throws std::invalid_argument for a nonzero value off the declared rank.
  void set(SubsetMask subset, Wide value);
  void add(SubsetMask subset, Wide value) { set(subset, values_[subset] + value); }

  std::span<const Wide> values() const noexcept { return values_; }

  bool operator==(const SetFunction&) const = default;

 private:
  int ground_size_;
  int rank_;
  std::vector<Wide> values_;
};

enum class ConvolutionMode {
  kNaive,  // direct enumeration of T subset of S, the reference
  kFast,   // ranked zeta transform, pointwise product, Moebius inversion
};

/// h(S) = sum over T subset of S with |T| = f.rank() of f(T) * g(S \ T),
/// supported on rank f.rank() + g.rank(). Throws std::invalid_argument if the
/// ground sets differ.
SetFunction subset_convolution(const SetFunction& f, const SetFunction& g, ConvolutionMode mode);

/// In-place transforms over all 2^n subsets; exposed for benchmarking.
void zeta_transform(std::span<Wide> values, int ground_size);
void moebius_transform(std::span<Wide> values, int ground_size);

struct CountingOptions {
  ConvolutionMode mode = ConvolutionMode::kFast;
  /// Raise up to kCountingOverrideMaxN to allow larger (very expensive) runs.
  int max_n = kCountingMaxN;
};

/// f_i^j for every round i in [0, log n] and player j: the number of unordered
/// valid sub-brackets on player set S (|S| = 2^i) that j wins. Only entries on
/// rank-2^i subsets are stored.
class DpTable {
 public:
  DpTable(const TfpInstance& instance, const CountingOptions& options);

  int players() const noexcept { return n_; }
  int rounds() const noexcept { return static_cast<int>(levels_.size()) - 1; }

  /// f_level^player(subset); zero when |subset| != 2^level.
  Wide value(int level, PlayerId player, SubsetMask subset) const;

  /// Whether a subset of size 2^level meets every seed-count requirement:
  /// for each power of two l with n / 2^level <= l <= s, it holds exactly
  /// l * 2^level / n of the top-l seeds.
  bool admissible(int level, SubsetMask subset) const;

 private:
  struct Level {
    int rank = 0;
    std::vector<std::vector<Wide>> by_player;  // indexed by colex rank
  };

  std::size_t index_of(SubsetMask subset) const;

  int n_;
  int seed_count_;
  std::vector<SubsetMask> top_seeds_;  // top_seeds_[t] = holders of ranks 1..2^t
  std::vector<Level> levels_;
};

/// Exact per-player number of canonical valid brackets won. Throws
/// std::invalid_argument when n exceeds options.max_n.
WinnerCounts count_valid_winning_brackets(const TfpInstance& instance,
                                          const CountingOptions& options = {});

/// A valid bracket won by the target, traced back through the DP, or nullopt
/// when the target wins none. The result is replay-checked before return.
std::optional<Bracket> extract_winning_bracket(const TfpInstance& instance,
                                               const CountingOptions& options = {});

/// Same traceback on a prebuilt table.
std::optional<Bracket> extract_winning_bracket(const TfpInstance& instance, const DpTable& table);

}  // namespace knockout
