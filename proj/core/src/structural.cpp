#include "knockout/structural.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "knockout/matching.hpp"
#include "knockout/random.hpp"

namespace knockout {

namespace {

bool contains(const std::vector<PlayerId>& v, PlayerId p) {
  return std::find(v.begin(), v.end(), p) != v.end();
}

void erase_value(std::vector<PlayerId>& v, PlayerId p) {
  v.erase(std::remove(v.begin(), v.end(), p), v.end());
}

struct Split {
  std::vector<PlayerId> beaten;
  std::vector<PlayerId> beaters;
};

Split split_around(const TournamentGraph& graph, std::vector<PlayerId> alive, PlayerId x) {
  std::sort(alive.begin(), alive.end());
  Split out;
  for (PlayerId p : alive) {
    if (p == x) continue;
    (graph.beats(x, p) ? out.beaten : out.beaters).push_back(p);
  }
  return out;
}

std::optional<PlayerId> find_pivot(const TournamentGraph& graph, const Split& s) {
  if (s.beaters.empty()) return std::nullopt;
  for (PlayerId y : s.beaten) {
    bool ok = std::all_of(s.beaters.begin(), s.beaters.end(),
                          [&](PlayerId b) { return graph.beats(y, b); });
    for (PlayerId a : s.beaten) {
      if (!ok) break;
      if (a == y) continue;
      ok = std::all_of(s.beaters.begin(), s.beaters.end(),
                       [&](PlayerId b) { return graph.beats(b, a); });
    }
    if (ok) return y;
  }
  return std::nullopt;
}

// Fewest members of `beaten` beating any single member of `beaters`;
// a large sentinel when there are no beaters.
int min_cover(const TournamentGraph& graph, const Split& s) {
  int best = 1 << 30;
  for (PlayerId b : s.beaters) {
    const int c = static_cast<int>(std::count_if(
        s.beaten.begin(), s.beaten.end(), [&](PlayerId a) { return graph.beats(a, b); }));
    best = std::min(best, c);
  }
  return best;
}

using Pairs = std::vector<std::pair<PlayerId, PlayerId>>;

// Round-by-round construction shared by the two-seed fixers. carry[p] is the
// best seed rank among the players p has eliminated (itself included), 0 if none.
struct Builder {
  const TfpInstance& instance;
  std::vector<int> carry;
  std::optional<Rng> rng;
  std::function<Pairs(Builder&, const std::vector<PlayerId>&)> round;

  Builder(const TfpInstance& inst, const FixerOptions& options) : instance(inst) {
    carry.assign(inst.size(), 0);
    for (int r = 1; r <= inst.seeds.count(); ++r) carry[inst.seeds.holder(r)] = r;
    if (options.shuffle_seed) rng.emplace(*options.shuffle_seed);
  }

  const TournamentGraph& graph() const { return instance.graph; }

  std::vector<PlayerId> order(std::vector<PlayerId> players) {
    if (rng) shuffle(std::span<PlayerId>(players), *rng);
    return players;
  }

  std::vector<PlayerId> carriers(const std::vector<PlayerId>& alive) const {
    std::vector<PlayerId> out;
    for (PlayerId p : alive)
      if (carry[p] != 0) out.push_back(p);
    std::sort(out.begin(), out.end(), [&](PlayerId a, PlayerId b) { return carry[a] < carry[b]; });
    return out;
  }

  std::vector<PlayerId> finish(const std::vector<PlayerId>& alive) {
    const auto seeds = carriers(alive);
    if (rng) return random_valid_bracket(alive, seeds, *rng);
    return any_valid_bracket(alive, seeds);
  }

  std::vector<PlayerId> solve(const std::vector<PlayerId>& alive) {
    const PlayerId x = instance.target;
    if (alive.size() == 1) return alive;
    if (std::all_of(alive.begin(), alive.end(),
                    [&](PlayerId p) { return p == x || graph().beats(x, p); }))
      return finish(alive);

    const Pairs pairs = round(*this, alive);
    if (pairs.size() * 2 != alive.size()) throw std::logic_error("round does not pair everyone");
    std::vector<PlayerId> winners;
    std::vector<PlayerId> loser_of(instance.size(), -1);
    for (auto [p, q] : pairs) {
      if (alive.size() > 2 && carry[p] != 0 && carry[q] != 0)
        throw std::logic_error("two seed carriers meet before the final");
      const PlayerId w = graph().beats(p, q) ? p : q;
      const PlayerId l = w == p ? q : p;
      if (carry[l] != 0 && (carry[w] == 0 || carry[l] < carry[w])) carry[w] = carry[l];
      winners.push_back(w);
      loser_of[w] = l;
    }
    if (!contains(winners, x)) throw std::logic_error("target eliminated");

    std::vector<PlayerId> out;
    for (PlayerId w : solve(winners)) {
      out.push_back(w);
      out.push_back(loser_of[w]);
    }
    return out;
  }
};

Bracket checked(const TfpInstance& instance, std::vector<PlayerId> leaves, const char* who) {
  Bracket bracket(std::move(leaves));
  if (!is_valid_bracket(bracket, instance.seeds) ||
      replay_bracket(bracket, instance.graph).winner != instance.target)
    throw std::logic_error(std::string(who) + " produced a bracket that fails verification");
  return bracket;
}

// Pairs consecutive players; returns the odd one out, if any.
std::optional<PlayerId> pair_up(const std::vector<PlayerId>& players, Pairs& out) {
  std::size_t i = 0;
  for (; i + 1 < players.size(); i += 2) out.emplace_back(players[i], players[i + 1]);
  if (i < players.size()) return players[i];
  return std::nullopt;
}

PlayerId other_carrier(const Builder& b, const std::vector<PlayerId>& alive) {
  for (PlayerId p : alive)
    if (p != b.instance.target && b.carry[p] != 0) return p;
  throw std::logic_error("second seed carrier missing");
}

Pairs king_round(Builder& b, const std::vector<PlayerId>& alive) {
  const TournamentGraph& g = b.graph();
  const PlayerId x = b.instance.target;
  const Split s = split_around(g, alive, x);
  const int m = static_cast<int>(alive.size());
  const int a = static_cast<int>(s.beaten.size());
  const PlayerId other = other_carrier(b, alive);
  const auto pivot = find_pivot(g, s);

  const bool wide = a >= m / 2 + 1;
  const bool tight = a == m / 2 && pivot && (contains(s.beaters, other) || other == *pivot);
  if (min_cover(g, s) < 1 || !(wide || tight))
    throw std::logic_error("king invariant lost with " + std::to_string(m) + " players left");

  const auto left = b.order(s.beaten);
  const auto right = b.order(s.beaters);
  const Matching match =
      max_bipartite_matching(left, right, [&](int u, int v) { return g.beats(u, v); });

  Pairs pairs(match.pairs.begin(), match.pairs.end());
  std::vector<PlayerId> rest_a = left;
  std::vector<PlayerId> rest_b = right;
  for (auto [u, v] : match.pairs) {
    erase_value(rest_a, u);
    erase_value(rest_b, v);
  }

  std::optional<PlayerId> hold;
  if (a == m / 2 + 1 && match.size() == 1 && contains(rest_a, other)) hold = other;

  const auto partner = std::find_if(rest_a.begin(), rest_a.end(),
                                    [&](PlayerId p) { return b.carry[p] == 0; });
  if (partner == rest_a.end()) throw std::logic_error("no unseeded opponent for the target");
  pairs.emplace_back(x, *partner);
  rest_a.erase(partner);
  if (hold) erase_value(rest_a, *hold);

  const auto odd_a = pair_up(rest_a, pairs);
  const auto odd_b = pair_up(rest_b, pairs);
  if (hold) {
    if (odd_a || !odd_b) throw std::logic_error("held seed has no beater to meet");
    pairs.emplace_back(*hold, *odd_b);
  } else if (odd_a && odd_b) {
    pairs.emplace_back(*odd_a, *odd_b);
  } else if (odd_a || odd_b) {
    throw std::logic_error("odd group left over");
  }
  return pairs;
}

Pairs superking_round(Builder& b, const std::vector<PlayerId>& alive) {
  const TournamentGraph& g = b.graph();
  const PlayerId x = b.instance.target;
  const Split s = split_around(g, alive, x);
  const int m = static_cast<int>(alive.size());
  if (min_cover(g, s) < floor_log2(m))
    throw std::logic_error("superking invariant lost with " + std::to_string(m) + " players left");

  const auto beaten = b.order(s.beaten);
  PlayerId w = beaten.front();
  if (b.carry[x] != 0) {
    const auto it = std::find_if(beaten.begin(), beaten.end(),
                                 [&](PlayerId p) { return b.carry[p] == 0; });
    if (it == beaten.end()) throw std::logic_error("no unseeded opponent for the target");
    w = *it;
  } else {
    const auto it = std::find_if(beaten.begin(), beaten.end(),
                                 [&](PlayerId p) { return b.carry[p] != 0; });
    if (it != beaten.end()) w = *it;
  }

  std::vector<PlayerId> left = beaten;
  erase_value(left, w);
  const auto right = b.order(s.beaters);
  const Matching match =
      max_bipartite_matching(left, right, [&](int u, int v) { return g.beats(u, v); });

  Pairs pairs{{x, w}};
  Pairs matched(match.pairs.begin(), match.pairs.end());
  std::vector<PlayerId> rest = left;
  std::vector<PlayerId> rest_b = right;
  for (auto [u, v] : match.pairs) {
    erase_value(rest, u);
    erase_value(rest_b, v);
  }
  rest.insert(rest.end(), rest_b.begin(), rest_b.end());

  std::vector<PlayerId> seeded;
  for (PlayerId p : rest)
    if (b.carry[p] != 0) seeded.push_back(p);

  if (seeded.size() == 2 && rest.size() == 2) {
    // Break the forced meeting by trading one carrier into a matched pair.
    bool swapped = false;
    for (PlayerId c : seeded) {
      for (auto& pr : matched) {
        if (!g.beats(pr.first, c)) continue;
        const PlayerId freed = pr.second;
        pr.second = c;
        rest = {seeded[0] == c ? seeded[1] : seeded[0], freed};
        swapped = true;
        break;
      }
      if (swapped) break;
    }
    if (!swapped) throw std::logic_error("seed carriers cannot be kept apart");
  } else if (seeded.size() == 2) {
    erase_value(rest, seeded[0]);
    erase_value(rest, seeded[1]);
    std::vector<PlayerId> ordered{seeded[0], rest.front(), seeded[1]};
    ordered.insert(ordered.end(), rest.begin() + 1, rest.end());
    rest = std::move(ordered);
  }

  pairs.insert(pairs.end(), matched.begin(), matched.end());
  if (pair_up(rest, pairs)) throw std::logic_error("odd group left over");
  return pairs;
}

void require(bool condition, const char* what) {
  if (!condition) throw PreconditionError(what);
}

std::vector<PlayerId> all_players(int n) {
  std::vector<PlayerId> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

KingPartition partition_around(const TournamentGraph& graph, PlayerId target) {
  if (target < 0 || target >= graph.size()) throw std::invalid_argument("target out of range");
  Split s = split_around(graph, all_players(graph.size()), target);
  KingPartition out;
  out.target = target;
  out.pivot = find_pivot(graph, s);
  out.beaten = std::move(s.beaten);
  out.beaters = std::move(s.beaters);
  return out;
}

PlayerProfile classify_player(const TournamentGraph& graph, PlayerId target) {
  if (target < 0 || target >= graph.size()) throw std::invalid_argument("target out of range");
  const int n = graph.size();
  const Split s = split_around(graph, all_players(n), target);
  const int cover = min_cover(graph, s);
  PlayerProfile p;
  p.outdegree = static_cast<int>(s.beaten.size());
  p.is_king = cover >= 1;
  p.is_superking = cover >= floor_log2(n);
  p.is_ultraking = cover >= n / 2;
  return p;
}

SpecialTournament build_special_tournament(int n, int a_size, SeedPlan plan) {
  if (!is_power_of_two(n) || n < 4) throw std::invalid_argument("n must be a power of two >= 4");
  if (a_size < 1 || a_size > n - 2) throw std::invalid_argument("a_size must be in [1, n - 2]");
  TournamentGraph graph(n);
  for (PlayerId z = a_size + 1; z < n; ++z) {
    graph.set_winner(z, 0);
    for (PlayerId w = 2; w <= a_size; ++w) graph.set_winner(z, w);
  }
  std::vector<PlayerId> holders;
  switch (plan) {
    case SeedPlan::kNone:
      break;
    case SeedPlan::kTargetAndOtherBeaten:
      if (a_size < 2) throw std::invalid_argument("A \\ {y} is empty");
      holders = {0, 2};
      break;
    case SeedPlan::kTargetAndPivot:
      holders = {0, 1};
      break;
    case SeedPlan::kTargetAndBeater:
      holders = {0, a_size + 1};
      break;
  }
  SpecialTournament out{TfpInstance{graph, SeedAssignment(holders), 0}, {}};
  out.partition = partition_around(out.instance.graph, 0);
  return out;
}

Bracket fix_king_two_seeds(const TfpInstance& instance, const FixerOptions& options) {
  instance.validate();
  const int n = instance.size();
  const PlayerId x = instance.target;
  require(instance.seeds.count() == 2, "king fixer needs exactly two seeds");
  require(instance.seeds.rank_of(x) != 0, "target must hold one of the two seeds");
  require(classify_player(instance.graph, x).is_king, "target is not a king");

  const KingPartition part = partition_around(instance.graph, x);
  const PlayerId other = instance.seeds.holder(instance.seeds.holder(1) == x ? 2 : 1);
  const int a = static_cast<int>(part.beaten.size());
  const bool wide = a >= n / 2 + 1;
  const bool tight =
      a == n / 2 && part.pivot && (contains(part.beaters, other) || other == *part.pivot);
  require(wide || tight,
          "target needs outdegree >= n/2 + 1, or outdegree n/2 in a special graph with the "
          "other seed beating it or at the pivot");

  Builder builder(instance, options);
  builder.round = king_round;
  return checked(instance, builder.solve(all_players(n)), "king fixer");
}

Bracket fix_superking_two_seeds(const TfpInstance& instance, const FixerOptions& options) {
  instance.validate();
  require(instance.seeds.count() == 2, "superking fixer needs exactly two seeds");
  require(classify_player(instance.graph, instance.target).is_superking,
          "target is not a superking");
  Builder builder(instance, options);
  builder.round = superking_round;
  return checked(instance, builder.solve(all_players(instance.size())), "superking fixer");
}

Bracket fix_ultraking(const TfpInstance& instance, const FixerOptions& options) {
  instance.validate();
  const int n = instance.size();
  const PlayerId x = instance.target;
  const TournamentGraph& g = instance.graph;
  require(n >= 2, "need at least two players");
  require(classify_player(g, x).is_ultraking, "target is not an ultraking");

  std::optional<Rng> rng;
  if (options.shuffle_seed) rng.emplace(*options.shuffle_seed);
  auto order = [&](std::vector<PlayerId> v) {
    if (rng) shuffle(std::span<PlayerId>(v), *rng);
    return v;
  };

  // Pad the seeding to n/2 ranks; any bracket valid for the padded seeding is
  // valid for the original one.
  std::vector<int> rank(n, 0);
  for (int r = 1; r <= instance.seeds.count(); ++r) rank[instance.seeds.holder(r)] = r;
  int next = instance.seeds.count() + 1;
  for (PlayerId p = 0; p < n && next <= n / 2; ++p)
    if (p != x && rank[p] == 0) rank[p] = next++;

  const KingPartition part = partition_around(g, x);
  std::vector<PlayerId> free_a = order(part.beaten);
  const std::vector<PlayerId> beaters = order(part.beaters);
  Pairs pairs;

  auto take_beater = [&](PlayerId b, bool want_seeded) {
    const auto it = std::find_if(free_a.begin(), free_a.end(), [&](PlayerId a) {
      return (rank[a] != 0) == want_seeded && g.beats(a, b);
    });
    if (it == free_a.end()) throw std::logic_error("no beater left for a round-one opponent");
    pairs.emplace_back(*it, b);
    free_a.erase(it);
  };
  for (PlayerId b : beaters)
    if (rank[b] != 0) take_beater(b, false);
  for (PlayerId b : beaters)
    if (rank[b] == 0) take_beater(b, true);

  free_a.push_back(x);
  std::vector<PlayerId> seeded, unseeded;
  for (PlayerId p : free_a) (rank[p] != 0 ? seeded : unseeded).push_back(p);
  if (seeded.size() != unseeded.size()) throw std::logic_error("seeded and unseeded counts differ");
  for (std::size_t i = 0; i < seeded.size(); ++i) pairs.emplace_back(seeded[i], unseeded[i]);

  // Each pair is one unit carrying the rank of its seeded member.
  std::vector<PlayerId> winners;
  std::vector<PlayerId> loser_of(n, -1);
  std::vector<int> unit_rank(n, 0);
  for (auto [p, q] : pairs) {
    const PlayerId w = g.beats(p, q) ? p : q;
    const PlayerId l = w == p ? q : p;
    winners.push_back(w);
    loser_of[w] = l;
    unit_rank[w] = std::max(rank[p], rank[q]);
  }
  std::vector<PlayerId> seed_order = winners;
  std::sort(seed_order.begin(), seed_order.end(),
            [&](PlayerId a, PlayerId b) { return unit_rank[a] < unit_rank[b]; });
  const auto units = rng ? random_valid_bracket(winners, seed_order, *rng)
                         : any_valid_bracket(winners, seed_order);

  std::vector<PlayerId> leaves;
  for (PlayerId w : units) {
    leaves.push_back(w);
    leaves.push_back(loser_of[w]);
  }
  return checked(instance, std::move(leaves), "ultraking fixer");
}

// --- counterexamples -------------------------------------------------------

std::string_view to_string(CounterexampleKind kind) {
  switch (kind) {
    case CounterexampleKind::kKingN2Unseeded: return "KING_N2_UNSEEDED";
    case CounterexampleKind::kKingHalfS2: return "KING_HALF_S2";
    case CounterexampleKind::kKingN2TopSeed: return "KING_N2_TOPSEED";
    case CounterexampleKind::kSuperkingS4: return "SUPERKING_S4";
    case CounterexampleKind::kUltrakingTight: return "ULTRAKING_TIGHT";
  }
  return "?";
}

std::optional<CounterexampleKind> parse_counterexample_kind(std::string_view name) {
  for (CounterexampleKind k : kAllCounterexampleKinds)
    if (to_string(k) == name) return k;
  return std::nullopt;
}

int min_counterexample_size(CounterexampleKind kind) {
  switch (kind) {
    case CounterexampleKind::kKingN2TopSeed:
    case CounterexampleKind::kSuperkingS4:
      return 8;
    default:
      return 4;
  }
}

TfpInstance make_counterexample(CounterexampleKind kind, int n, int seeds) {
  if (!is_power_of_two(n) || n < min_counterexample_size(kind))
    throw std::invalid_argument(std::string(to_string(kind)) + " needs n a power of two >= " +
                                std::to_string(min_counterexample_size(kind)));
  auto check_seeds = [&](int lo, int hi) {
    if (!is_power_of_two(seeds) || seeds < lo || seeds > hi)
      throw std::invalid_argument(std::string(to_string(kind)) + " needs s a power of two in [" +
                                  std::to_string(lo) + ", " + std::to_string(hi) + "]");
  };

  TournamentGraph graph(n);
  std::vector<PlayerId> holders;
  switch (kind) {
    case CounterexampleKind::kKingN2Unseeded: {
      // x = 0, y = 1, A \ {y} = 2..n-2, z = n-1; y and z are the top two seeds.
      if (seeds == 0) seeds = 2;
      check_seeds(2, n / 2);
      graph = build_special_tournament(n, n - 2, SeedPlan::kNone).instance.graph;
      holders = {1, n - 1};
      for (PlayerId p = 2; static_cast<int>(holders.size()) < seeds; ++p) holders.push_back(p);
      break;
    }
    case CounterexampleKind::kKingHalfS2: {
      if (seeds == 0) seeds = 2;
      check_seeds(2, 2);
      return build_special_tournament(n, n / 2, SeedPlan::kTargetAndOtherBeaten).instance;
    }
    case CounterexampleKind::kKingN2TopSeed: {
      // x = 0 beats 1..n-2 and loses to z = n-1. y = n-2 beats z but loses to
      // the rest of A, while z beats 1..n-3. Seeds: x, z, y, then 1, 2, ...
      if (seeds == 0) seeds = 4;
      check_seeds(4, n / 2);
      const PlayerId y = n - 2;
      const PlayerId z = n - 1;
      graph.set_winner(z, 0);
      for (PlayerId w = 1; w < y; ++w) graph.set_winner(z, w);
      holders = {0, z, y};
      for (PlayerId p = 1; static_cast<int>(holders.size()) < seeds; ++p) holders.push_back(p);
      break;
    }
    case CounterexampleKind::kSuperkingS4: {
      // x = 0 beats A = 1..log n, and A beats B = the rest, which beats x.
      // Seeds: x and the first three members of A, then B lowest id first.
      if (seeds == 0) seeds = 4;
      check_seeds(4, n / 2);
      const int a = floor_log2(n);
      for (PlayerId b = a + 1; b < n; ++b) graph.set_winner(b, 0);
      holders = {0, 1, 2, 3};
      for (PlayerId p = a + 1; static_cast<int>(holders.size()) < seeds; ++p) holders.push_back(p);
      break;
    }
    case CounterexampleKind::kUltrakingTight: {
      // x = 0 beats A = 1..n/2-1, every member of A beats every member of
      // B = n/2..n-1, and B beats x. All of {x} and A are seeded.
      if (seeds == 0) seeds = n / 2;
      check_seeds(n / 2, n / 2);
      for (PlayerId b = n / 2; b < n; ++b) graph.set_winner(b, 0);
      for (PlayerId p = 0; p < n / 2; ++p) holders.push_back(p);
      break;
    }
  }
  TfpInstance out{std::move(graph), SeedAssignment(std::move(holders)), 0};
  out.validate();
  return out;
}

}  // namespace knockout
