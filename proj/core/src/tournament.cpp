#include "knockout/tournament.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "knockout/random.hpp"

namespace knockout {

// --- TournamentGraph -------------------------------------------------------

TournamentGraph::TournamentGraph(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("tournament needs at least one player");
  wins_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) wins_[static_cast<std::size_t>(i) * n + j] = 1;
}

void TournamentGraph::set_winner(PlayerId winner, PlayerId loser) {
  if (winner == loser || winner < 0 || loser < 0 || winner >= n_ || loser >= n_)
    throw std::invalid_argument("set_winner: invalid pair " + std::to_string(winner) +
                                "," + std::to_string(loser));
  wins_[static_cast<std::size_t>(winner) * n_ + loser] = 1;
  wins_[static_cast<std::size_t>(loser) * n_ + winner] = 0;
}

int TournamentGraph::outdegree(PlayerId player) const {
  int d = 0;
  for (int j = 0; j < n_; ++j) d += wins_[static_cast<std::size_t>(player) * n_ + j];
  return d;
}

std::vector<PlayerId> TournamentGraph::beaten_by(PlayerId player) const {
  std::vector<PlayerId> out;
  for (int j = 0; j < n_; ++j)
    if (j != player && beats(player, j)) out.push_back(j);
  return out;
}

std::vector<PlayerId> TournamentGraph::beaters_of(PlayerId player) const {
  std::vector<PlayerId> out;
  for (int j = 0; j < n_; ++j)
    if (j != player && beats(j, player)) out.push_back(j);
  return out;
}

TournamentGraph TournamentGraph::induced(std::span<const PlayerId> players) const {
  const int m = static_cast<int>(players.size());
  TournamentGraph sub(m);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      if (beats(players[a], players[b]))
        sub.set_winner(a, b);
      else
        sub.set_winner(b, a);
    }
  return sub;
}

// --- SeedAssignment --------------------------------------------------------

SeedAssignment::SeedAssignment(std::vector<PlayerId> holders) : holders_(std::move(holders)) {
  const int s = count();
  if (s != 0 && (s < 2 || !is_power_of_two(s)))
    throw std::invalid_argument("seed count must be 0 or a power of two >= 2, got " +
                                std::to_string(s));
  std::vector<PlayerId> sorted = holders_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("seed holders must be distinct");
  if (!sorted.empty() && sorted.front() < 0)
    throw std::invalid_argument("seed holder ids must be non-negative");
}

int SeedAssignment::rank_of(PlayerId player) const {
  for (int r = 0; r < count(); ++r)
    if (holders_[r] == player) return r + 1;
  return 0;
}

void SeedAssignment::validate_for(int n) const {
  for (PlayerId p : holders_)
    if (p >= n) throw std::invalid_argument("seed holder " + std::to_string(p) + " out of range");
  if (count() > n / 2)
    throw std::invalid_argument("seed count " + std::to_string(count()) + " exceeds n/2 = " +
                                std::to_string(n / 2));
}

// --- Bracket ---------------------------------------------------------------

Bracket::Bracket(std::vector<PlayerId> leaves) : leaves_(std::move(leaves)) {
  const int n = size();
  if (!is_power_of_two(n)) throw std::invalid_argument("bracket size must be a power of two");
  std::vector<char> seen(n, 0);
  for (PlayerId p : leaves_) {
    if (p < 0 || p >= n || seen[p]) throw std::invalid_argument("bracket is not a permutation");
    seen[p] = 1;
  }
}

std::vector<int> Bracket::positions() const {
  std::vector<int> pos(leaves_.size());
  for (int i = 0; i < size(); ++i) pos[leaves_[i]] = i;
  return pos;
}

void TfpInstance::validate() const {
  const int n = graph.size();
  if (!is_power_of_two(n) || n < 2)
    throw std::invalid_argument("player count must be a power of two >= 2");
  if (target < 0 || target >= n) throw std::invalid_argument("target out of range");
  seeds.validate_for(n);
}

// --- validity and replay ---------------------------------------------------

bool is_valid_bracket(const Bracket& bracket, const SeedAssignment& seeds) {
  const int n = bracket.size();
  const int s = seeds.count();
  if (s > n) throw std::invalid_argument("more seeds than bracket positions");
  for (PlayerId p : seeds.holders())
    if (p >= n) throw std::invalid_argument("seed holder outside bracket");
  if (s == 0) return true;
  const std::vector<int> pos = bracket.positions();
  for (int l = 2; l <= s; l *= 2) {
    const int level = floor_log2(l);
    std::vector<char> used(l, 0);
    for (int r = 1; r <= l; ++r) {
      const int w = SectionRef::of(n, level, pos[seeds.holder(r)]).index;
      if (used[w]) return false;
      used[w] = 1;
    }
  }
  return true;
}

ReplayResult replay_bracket(const Bracket& bracket, const TournamentGraph& graph) {
  if (bracket.size() != graph.size())
    throw std::invalid_argument("bracket size does not match tournament size");
  ReplayResult result;
  std::vector<PlayerId> alive(bracket.leaves().begin(), bracket.leaves().end());
  while (alive.size() > 1) {
    std::vector<Match> round;
    std::vector<PlayerId> next;
    round.reserve(alive.size() / 2);
    for (std::size_t i = 0; i < alive.size(); i += 2) {
      const PlayerId a = alive[i], b = alive[i + 1];
      const PlayerId w = graph.beats(a, b) ? a : b;
      round.push_back({a, b, w});
      next.push_back(w);
    }
    result.log.push_back(std::move(round));
    alive = std::move(next);
  }
  result.winner = alive.front();
  return result;
}

PlayerId bracket_winner(std::span<const PlayerId> leaves, const TournamentGraph& graph) {
  std::vector<PlayerId> alive(leaves.begin(), leaves.end());
  while (alive.size() > 1) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < alive.size(); i += 2)
      alive[out++] = graph.beats(alive[i], alive[i + 1]) ? alive[i] : alive[i + 1];
    alive.resize(out);
  }
  return alive.front();
}

// --- arrangement helpers ---------------------------------------------------

namespace {

void check_arrangement_input(std::span<const PlayerId> players,
                             std::span<const PlayerId> seed_order) {
  if (!is_power_of_two(static_cast<int>(players.size())))
    throw std::invalid_argument("player count must be a power of two");
  if (seed_order.size() > players.size())
    throw std::invalid_argument("more seeds than players");
  for (PlayerId p : seed_order)
    if (std::find(players.begin(), players.end(), p) == players.end())
      throw std::invalid_argument("seeded player " + std::to_string(p) + " missing");
}

std::vector<PlayerId> unseeded_of(std::span<const PlayerId> players,
                                  std::span<const PlayerId> seed_order) {
  std::vector<PlayerId> rest;
  for (PlayerId p : players)
    if (std::find(seed_order.begin(), seed_order.end(), p) == seed_order.end()) rest.push_back(p);
  return rest;
}

// Seeds listed strongest first; `fill` supplies unseeded players in order.
void place_alternating(std::span<const PlayerId> seeds, std::span<PlayerId> out,
                       std::vector<PlayerId>::const_iterator& fill) {
  if (out.size() == 1) {
    out[0] = seeds.empty() ? *fill++ : seeds[0];
    return;
  }
  std::vector<PlayerId> left, right;
  for (std::size_t i = 0; i < seeds.size(); ++i) (i % 2 == 0 ? left : right).push_back(seeds[i]);
  const std::size_t half = out.size() / 2;
  place_alternating(left, out.subspan(0, half), fill);
  place_alternating(right, out.subspan(half), fill);
}

void place_random(std::span<const PlayerId> seeds, std::span<PlayerId> out,
                  std::vector<PlayerId>::const_iterator& fill, std::mt19937_64& rng) {
  if (out.size() == 1) {
    out[0] = seeds.empty() ? *fill++ : seeds[0];
    return;
  }
  std::vector<PlayerId> left, right;
  bool left_next = uniform_below(rng, 2) == 0;
  // Blocks of ranks {1,2}, {3,4}, {5..8}, {9..16}, ...
  for (std::size_t begin = 0, end = 2; begin < seeds.size(); begin = end, end *= 2) {
    const std::size_t stop = std::min(end, seeds.size());
    std::vector<PlayerId> chunk(seeds.begin() + begin, seeds.begin() + stop);
    shuffle(std::span<PlayerId>(chunk), rng);
    for (PlayerId p : chunk) {
      (left_next ? left : right).push_back(p);
      left_next = !left_next;
    }
  }
  // Preserve rank order inside each half for the recursion.
  auto by_rank = [&](PlayerId a, PlayerId b) {
    return std::find(seeds.begin(), seeds.end(), a) < std::find(seeds.begin(), seeds.end(), b);
  };
  std::sort(left.begin(), left.end(), by_rank);
  std::sort(right.begin(), right.end(), by_rank);
  const std::size_t half = out.size() / 2;
  place_random(left, out.subspan(0, half), fill, rng);
  place_random(right, out.subspan(half), fill, rng);
}

}  // namespace

std::vector<PlayerId> any_valid_bracket(std::span<const PlayerId> players,
                                        std::span<const PlayerId> seed_order) {
  check_arrangement_input(players, seed_order);
  std::vector<PlayerId> rest = unseeded_of(players, seed_order);
  std::sort(rest.begin(), rest.end());
  std::vector<PlayerId> out(players.size());
  auto fill = std::as_const(rest).begin();
  place_alternating(seed_order, out, fill);
  return out;
}

Bracket any_valid_bracket(int n, const SeedAssignment& seeds) {
  std::vector<PlayerId> players(n);
  for (int i = 0; i < n; ++i) players[i] = i;
  return Bracket(any_valid_bracket(players, seeds.holders()));
}

std::vector<PlayerId> random_valid_bracket(std::span<const PlayerId> players,
                                           std::span<const PlayerId> seed_order,
                                           std::mt19937_64& rng) {
  check_arrangement_input(players, seed_order);
  std::vector<PlayerId> rest = unseeded_of(players, seed_order);
  shuffle(std::span<PlayerId>(rest), rng);
  std::vector<PlayerId> out(players.size());
  auto fill = std::as_const(rest).begin();
  place_random(seed_order, out, fill, rng);
  return out;
}

namespace {

PlayerId canonicalize(std::span<PlayerId> leaves) {
  if (leaves.size() == 1) return leaves[0];
  const std::size_t half = leaves.size() / 2;
  const PlayerId lmin = canonicalize(leaves.subspan(0, half));
  const PlayerId rmin = canonicalize(leaves.subspan(half));
  if (rmin < lmin) {
    std::rotate(leaves.begin(), leaves.begin() + half, leaves.end());
    return rmin;
  }
  return lmin;
}

}  // namespace

Bracket canonical_form(const Bracket& bracket) {
  std::vector<PlayerId> leaves(bracket.leaves().begin(), bracket.leaves().end());
  canonicalize(leaves);
  return Bracket(std::move(leaves));
}

}  // namespace knockout
