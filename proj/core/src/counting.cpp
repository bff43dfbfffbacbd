#include "knockout/counting.hpp"

#include <array>
#include <bit>
#include <stdexcept>
#include <string>

namespace knockout {

namespace {

constexpr std::array<std::array<std::uint64_t, 34>, 34> make_binomials() {
  std::array<std::array<std::uint64_t, 34>, 34> c{};
  for (int a = 0; a < 34; ++a) {
    c[a][0] = 1;
    for (int b = 1; b <= a; ++b) c[a][b] = c[a - 1][b - 1] + c[a - 1][b];
  }
  return c;
}

constexpr auto kBinomial = make_binomials();

int popcount(SubsetMask m) { return std::popcount(m); }

SubsetMask full_mask(int n) { return n >= 64 ? ~SubsetMask{0} : (SubsetMask{1} << n) - 1; }

// Next larger integer with the same number of set bits.
SubsetMask next_same_popcount(SubsetMask v) {
  const SubsetMask c = v & (~v + 1);
  const SubsetMask r = v + c;
  return (((r ^ v) >> 2) / c) | r;
}

template <class Fn>
void for_each_subset_of_rank(int n, int rank, Fn&& fn) {
  if (rank == 0) {
    fn(SubsetMask{0});
    return;
  }
  const SubsetMask limit = SubsetMask{1} << n;
  for (SubsetMask s = (SubsetMask{1} << rank) - 1; s < limit; s = next_same_popcount(s)) fn(s);
}

void check_ground(int n) {
  if (n < 0 || n > kCountingOverrideMaxN)
    throw std::invalid_argument("ground set size must be in [0, " +
                                std::to_string(kCountingOverrideMaxN) + "]");
}

}  // namespace

// --- SetFunction -----------------------------------------------------------

SetFunction::SetFunction(int ground_size, int rank) : ground_size_(ground_size), rank_(rank) {
  check_ground(ground_size);
  if (rank < 0 || rank > ground_size) throw std::invalid_argument("rank out of range");
  values_.assign(std::size_t{1} << ground_size, 0);
}

void SetFunction::set(SubsetMask subset, Wide value) {
  if (subset > full_mask(ground_size_)) throw std::invalid_argument("subset outside ground set");
  if (value != 0 && popcount(subset) != rank_)
    throw std::invalid_argument("nonzero value off the declared rank");
  values_[subset] = value;
}

// --- convolution -----------------------------------------------------------

void zeta_transform(std::span<Wide> values, int ground_size) {
  const std::size_t size = std::size_t{1} << ground_size;
  for (int bit = 0; bit < ground_size; ++bit) {
    const std::size_t b = std::size_t{1} << bit;
    for (std::size_t m = 0; m < size; ++m)
      if (m & b) values[m] += values[m ^ b];
  }
}

void moebius_transform(std::span<Wide> values, int ground_size) {
  const std::size_t size = std::size_t{1} << ground_size;
  for (int bit = 0; bit < ground_size; ++bit) {
    const std::size_t b = std::size_t{1} << bit;
    for (std::size_t m = 0; m < size; ++m)
      if (m & b) values[m] -= values[m ^ b];
  }
}

SetFunction subset_convolution(const SetFunction& f, const SetFunction& g, ConvolutionMode mode) {
  const int n = f.ground_size();
  if (g.ground_size() != n) throw std::invalid_argument("ground set mismatch");
  const int out_rank = f.rank() + g.rank();
  if (out_rank > n) return SetFunction(n, n);  // no subset is large enough
  SetFunction h(n, out_rank);

  if (mode == ConvolutionMode::kNaive) {
    for_each_subset_of_rank(n, out_rank, [&](SubsetMask s) {
      Wide sum = 0;
      for (SubsetMask t = s;; t = (t - 1) & s) {
        if (popcount(t) == f.rank()) sum += f.at(t) * g.at(s ^ t);
        if (t == 0) break;
      }
      h.set(s, sum);
    });
    return h;
  }

  // Both inputs are supported on a single rank, so the ranked product of
  // transforms collapses to one pointwise product. After inversion, entries
  // of size |f| + |g| count exactly the disjoint pairs (T, S \ T).
  std::vector<Wide> zf(f.values().begin(), f.values().end());
  std::vector<Wide> zg(g.values().begin(), g.values().end());
  zeta_transform(zf, n);
  zeta_transform(zg, n);
  for (std::size_t m = 0; m < zf.size(); ++m) zf[m] *= zg[m];
  moebius_transform(zf, n);
  for_each_subset_of_rank(n, out_rank, [&](SubsetMask s) { h.set(s, zf[s]); });
  return h;
}

// --- DP table --------------------------------------------------------------

DpTable::DpTable(const TfpInstance& instance, const CountingOptions& options)
    : n_(instance.size()), seed_count_(instance.seeds.count()) {
  instance.validate();
  if (options.max_n > kCountingOverrideMaxN)
    throw std::invalid_argument("counting cap cannot exceed " +
                                std::to_string(kCountingOverrideMaxN));
  if (n_ > options.max_n)
    throw std::invalid_argument("counting limited to n <= " + std::to_string(options.max_n) +
                                ", got n = " + std::to_string(n_));

  for (int l = 1; l <= seed_count_; l *= 2) {
    SubsetMask top = 0;
    for (int r = 1; r <= l; ++r) top |= SubsetMask{1} << instance.seeds.holder(r);
    top_seeds_.push_back(top);
  }

  const TournamentGraph& graph = instance.graph;
  const int rounds = floor_log2(n_);
  levels_.resize(rounds + 1);

  levels_[0].rank = 1;
  levels_[0].by_player.assign(n_, std::vector<Wide>(n_, 0));
  for (int j = 0; j < n_; ++j) levels_[0].by_player[j][index_of(SubsetMask{1} << j)] = 1;

  for (int i = 1; i <= rounds; ++i) {
    const int half = 1 << (i - 1);
    const int rank = 1 << i;
    const Level& prev = levels_[i - 1];
    Level& cur = levels_[i];
    cur.rank = rank;
    cur.by_player.assign(n_, std::vector<Wide>(kBinomial[n_][rank], 0));

    auto dense = [&](PlayerId k) {
      SetFunction fn(n_, half);
      for_each_subset_of_rank(n_, half, [&](SubsetMask s) {
        const Wide v = prev.by_player[k][index_of(s)];
        if (v != 0) fn.set(s, v);
      });
      return fn;
    };

    // By linearity, sum_k conv(f^j, f^k) = conv(f^j, sum_k f^k); a term with
    // f^k(S \ T) != 0 needs k in S \ T, so no cross terms appear.
    for (int j = 0; j < n_; ++j) {
      SetFunction beaten(n_, half);
      bool any = false;
      for (int k = 0; k < n_; ++k) {
        if (k == j || !graph.beats(j, k)) continue;
        any = true;
        for_each_subset_of_rank(n_, half, [&](SubsetMask s) {
          const Wide v = prev.by_player[k][index_of(s)];
          if (v != 0) beaten.add(s, v);
        });
      }
      if (!any) continue;
      const SetFunction h = subset_convolution(dense(j), beaten, options.mode);
      const SubsetMask bit = SubsetMask{1} << j;
      for_each_subset_of_rank(n_, rank, [&](SubsetMask s) {
        if ((s & bit) && admissible(i, s)) cur.by_player[j][index_of(s)] = h.at(s);
      });
    }
  }
}

std::size_t DpTable::index_of(SubsetMask subset) const {
  std::size_t idx = 0;
  int k = 1;
  while (subset) {
    const int p = std::countr_zero(subset);
    idx += kBinomial[p][k];
    ++k;
    subset &= subset - 1;
  }
  return idx;
}

Wide DpTable::value(int level, PlayerId player, SubsetMask subset) const {
  if (level < 0 || level >= static_cast<int>(levels_.size()))
    throw std::invalid_argument("level out of range");
  if (popcount(subset) != (1 << level) || subset > full_mask(n_)) return 0;
  return levels_[level].by_player.at(player)[index_of(subset)];
}

bool DpTable::admissible(int level, SubsetMask subset) const {
  const int size = 1 << level;
  for (int t = 1; t < static_cast<int>(top_seeds_.size()); ++t) {
    const int l = 1 << t;
    if (static_cast<long long>(l) * size < n_) continue;  // l < n / 2^level
    if (static_cast<long long>(popcount(subset & top_seeds_[t])) * n_ !=
        static_cast<long long>(l) * size)
      return false;
  }
  return true;
}

WinnerCounts count_valid_winning_brackets(const TfpInstance& instance,
                                          const CountingOptions& options) {
  const DpTable table(instance, options);
  const int n = instance.size();
  WinnerCounts result;
  result.counts.resize(n);
  for (int j = 0; j < n; ++j) result.counts[j] = table.value(table.rounds(), j, full_mask(n));
  return result;
}

namespace {

void trace(const DpTable& table, const TournamentGraph& graph, int level, PlayerId winner,
           SubsetMask players, std::vector<PlayerId>& out) {
  if (level == 0) {
    out.push_back(winner);
    return;
  }
  const int half = 1 << (level - 1);
  const SubsetMask bit = SubsetMask{1} << winner;
  const SubsetMask others = players ^ bit;
  for (SubsetMask sub = others;; sub = (sub - 1) & others) {
    if (popcount(sub) == half - 1) {
      const SubsetMask left = sub | bit;
      const SubsetMask right = players ^ left;
      if (table.value(level - 1, winner, left) != 0) {
        for (SubsetMask rest = right; rest; rest &= rest - 1) {
          const PlayerId k = std::countr_zero(rest);
          if (graph.beats(winner, k) && table.value(level - 1, k, right) != 0) {
            trace(table, graph, level - 1, winner, left, out);
            trace(table, graph, level - 1, k, right, out);
            return;
          }
        }
      }
    }
    if (sub == 0) break;
  }
  throw std::logic_error("DP traceback found no nonzero split");
}

}  // namespace

std::optional<Bracket> extract_winning_bracket(const TfpInstance& instance, const DpTable& table) {
  const int n = instance.size();
  if (table.players() != n) throw std::invalid_argument("table does not match instance");
  if (table.value(table.rounds(), instance.target, full_mask(n)) == 0) return std::nullopt;
  std::vector<PlayerId> leaves;
  leaves.reserve(n);
  trace(table, instance.graph, table.rounds(), instance.target, full_mask(n), leaves);
  Bracket bracket(std::move(leaves));
  if (!is_valid_bracket(bracket, instance.seeds) ||
      replay_bracket(bracket, instance.graph).winner != instance.target)
    throw std::logic_error("DP traceback produced an unverified bracket");
  return bracket;
}

std::optional<Bracket> extract_winning_bracket(const TfpInstance& instance,
                                               const CountingOptions& options) {
  const DpTable table(instance, options);
  return extract_winning_bracket(instance, table);
}

}  // namespace knockout
