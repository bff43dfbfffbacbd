#include "knockout/probabilistic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "knockout/random.hpp"

namespace knockout {

std::string_view to_string(RandomModel model) {
  switch (model) {
    case RandomModel::kGeneralized: return "generalized";
    case RandomModel::kCondorcet: return "condorcet";
    case RandomModel::kUniform: return "uniform";
  }
  return "?";
}

std::optional<RandomModel> parse_random_model(std::string_view name) {
  for (RandomModel m : {RandomModel::kGeneralized, RandomModel::kCondorcet, RandomModel::kUniform})
    if (to_string(m) == name) return m;
  return std::nullopt;
}

TournamentGraph sample_tournament(const RandomModelConfig& config) {
  const int n = config.n;
  const double p = config.p;
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (!(p >= 0.0 && p <= 0.5)) throw std::invalid_argument("p must lie in [0, 1/2]");

  const bool given = !config.probs.empty();
  if (given) {
    if (config.model != RandomModel::kGeneralized)
      throw std::invalid_argument("a probability matrix needs the generalized model");
    if (static_cast<int>(config.probs.size()) != n)
      throw std::invalid_argument("probability matrix must be n x n");
    constexpr double kTol = 1e-9;
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(config.probs[i].size()) != n)
        throw std::invalid_argument("probability matrix must be n x n");
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const double q = config.probs[i][j];
        if (!(q >= p - kTol && q <= 1.0 - p + kTol))
          throw std::invalid_argument("p_" + std::to_string(i) + "," + std::to_string(j) +
                                      " outside [p, 1 - p]");
        if (std::abs(q + config.probs[j][i] - 1.0) > kTol)
          throw std::invalid_argument("p_ij + p_ji must equal 1 at " + std::to_string(i) + "," +
                                      std::to_string(j));
      }
    }
  }

  Rng rng(config.rng_seed);
  TournamentGraph graph(n);
  for (PlayerId i = 0; i < n; ++i) {
    for (PlayerId j = i + 1; j < n; ++j) {
      double q = 0.5;
      switch (config.model) {
        case RandomModel::kGeneralized:
          q = given ? config.probs[i][j] : p + (1.0 - 2.0 * p) * uniform_unit(rng);
          break;
        case RandomModel::kCondorcet:
          q = 1.0 - p;
          break;
        case RandomModel::kUniform:
          break;
      }
      if (!(uniform_unit(rng) < q)) graph.set_winner(j, i);
    }
  }
  return graph;
}

namespace {

using Pairs = std::vector<std::pair<PlayerId, PlayerId>>;
using RoundFn = std::function<std::optional<Pairs>(const std::vector<PlayerId>&)>;

struct Split {
  std::vector<PlayerId> beaten;
  std::vector<PlayerId> beaters;
};

Split split_around(const TournamentGraph& g, const std::vector<PlayerId>& alive, PlayerId x) {
  Split s;
  for (PlayerId p : alive)
    if (p != x) (g.beats(x, p) ? s.beaten : s.beaters).push_back(p);
  return s;
}

void erase_value(std::vector<PlayerId>& v, PlayerId p) {
  v.erase(std::remove(v.begin(), v.end(), p), v.end());
}

// Pairs matched players, then the rest of each side among themselves, and the
// two odd ones out together.
Pairs pair_rounds(const Matching& match, std::vector<PlayerId> rest_a,
                  std::vector<PlayerId> rest_b) {
  Pairs pairs(match.pairs.begin(), match.pairs.end());
  for (auto [u, v] : match.pairs) {
    erase_value(rest_a, u);
    erase_value(rest_b, v);
  }
  std::vector<PlayerId> odd;
  for (const auto* side : {&rest_a, &rest_b}) {
    std::size_t i = 0;
    for (; i + 1 < side->size(); i += 2) pairs.emplace_back((*side)[i], (*side)[i + 1]);
    if (i < side->size()) odd.push_back((*side)[i]);
  }
  if (odd.size() == 2) pairs.emplace_back(odd[0], odd[1]);
  return pairs;
}

std::optional<std::vector<PlayerId>> build_rounds(const TournamentGraph& g,
                                                  const std::vector<PlayerId>& alive, PlayerId x,
                                                  const RoundFn& round, Rng* rng) {
  if (alive.size() == 1) return alive;
  if (std::all_of(alive.begin(), alive.end(), [&](PlayerId p) { return p == x || g.beats(x, p); })) {
    std::vector<PlayerId> out = alive;
    if (rng) shuffle(std::span<PlayerId>(out), *rng);
    return out;
  }
  const auto pairs = round(alive);
  if (!pairs || pairs->size() * 2 != alive.size()) return std::nullopt;

  std::vector<PlayerId> winners;
  std::vector<PlayerId> loser_of(g.size(), -1);
  bool target_alive = false;
  for (auto [p, q] : *pairs) {
    const PlayerId w = g.beats(p, q) ? p : q;
    winners.push_back(w);
    loser_of[w] = w == p ? q : p;
    target_alive |= w == x;
  }
  if (!target_alive) return std::nullopt;
  const auto sub = build_rounds(g, winners, x, round, rng);
  if (!sub) return std::nullopt;
  std::vector<PlayerId> out;
  for (PlayerId w : *sub) {
    out.push_back(w);
    out.push_back(loser_of[w]);
  }
  return out;
}

std::optional<Pairs> king_round(const TournamentGraph& g, const std::vector<PlayerId>& alive,
                                PlayerId x) {
  const Split s = split_around(g, alive, x);
  if (s.beaten.size() * 2 < alive.size()) return std::nullopt;
  for (PlayerId b : s.beaters)
    if (std::none_of(s.beaten.begin(), s.beaten.end(), [&](PlayerId a) { return g.beats(a, b); }))
      return std::nullopt;
  const Matching match =
      max_bipartite_matching(s.beaten, s.beaters, [&](int u, int v) { return g.beats(u, v); });
  std::vector<PlayerId> rest_a = s.beaten;
  for (auto [u, v] : match.pairs) erase_value(rest_a, u);
  if (rest_a.empty()) return std::nullopt;
  const PlayerId partner = rest_a.front();
  std::vector<PlayerId> beaten = s.beaten;
  erase_value(beaten, partner);
  Pairs pairs = pair_rounds(match, beaten, s.beaters);
  pairs.emplace_back(x, partner);
  return pairs;
}

std::optional<Pairs> random_round(const TournamentGraph& g, const std::vector<PlayerId>& alive,
                                  PlayerId x, Rng& rng) {
  Split s = split_around(g, alive, x);
  if (s.beaten.empty()) return std::nullopt;
  const std::size_t pick = static_cast<std::size_t>(uniform_below(rng, s.beaten.size()));
  const PlayerId partner = s.beaten[pick];
  s.beaten.erase(s.beaten.begin() + static_cast<std::ptrdiff_t>(pick));
  shuffle(std::span<PlayerId>(s.beaten), rng);
  shuffle(std::span<PlayerId>(s.beaters), rng);
  const Matching match =
      max_bipartite_matching(s.beaten, s.beaters, [&](int u, int v) { return g.beats(u, v); });
  Pairs pairs = pair_rounds(match, s.beaten, s.beaters);
  pairs.emplace_back(x, partner);
  return pairs;
}

std::vector<PlayerId> all_players(int n) {
  std::vector<PlayerId> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

std::optional<Bracket> accept(const TournamentGraph& g, PlayerId x,
                              std::optional<std::vector<PlayerId>> leaves) {
  if (!leaves) return std::nullopt;
  Bracket b(std::move(*leaves));
  if (bracket_winner(b.leaves(), g) != x)
    throw std::logic_error("non-seeded fixer produced a losing bracket");
  return b;
}

}  // namespace

std::optional<Bracket> fix_nonseeded(const TournamentGraph& graph, PlayerId target,
                                     const NonseededOptions& options) {
  const int n = graph.size();
  if (!is_power_of_two(n)) throw std::invalid_argument("player count must be a power of two");
  if (target < 0 || target >= n) throw std::invalid_argument("target out of range");
  if (options.restarts < 0) throw std::invalid_argument("restarts must be non-negative");
  const auto players = all_players(n);

  if (graph.outdegree(target) == n - 1) return Bracket(players);

  const RoundFn king = [&](const std::vector<PlayerId>& alive) {
    return king_round(graph, alive, target);
  };
  if (auto b = accept(graph, target, build_rounds(graph, players, target, king, nullptr))) return b;

  Rng rng(options.rng_seed);
  const RoundFn randomized = [&](const std::vector<PlayerId>& alive) {
    return random_round(graph, alive, target, rng);
  };
  for (int r = 0; r < options.restarts; ++r)
    if (auto b = accept(graph, target, build_rounds(graph, players, target, randomized, &rng)))
      return b;

  if (n <= options.exact_max_n) {
    const TfpInstance inst{graph, SeedAssignment(), target};
    CountingOptions counting;
    counting.max_n = std::max(options.exact_max_n, kCountingMaxN);
    return extract_winning_bracket(inst, counting);
  }
  return std::nullopt;
}

std::optional<SpareResult> fix_nonseeded_with_spare(const TournamentGraph& graph, PlayerId target,
                                                    const NonseededOptions& options) {
  const int total = graph.size();
  if (total < 2 || !is_power_of_two(total - 1))
    throw std::invalid_argument("player count must be 2^r + 1");
  if (target < 0 || target >= total) throw std::invalid_argument("target out of range");

  std::vector<PlayerId> candidates = graph.beaten_by(target);
  std::vector<int> outdegree(total);
  for (PlayerId p = 0; p < total; ++p) outdegree[p] = graph.outdegree(p);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](PlayerId a, PlayerId b) { return outdegree[a] > outdegree[b]; });

  for (PlayerId y : candidates) {
    std::vector<PlayerId> rest;
    for (PlayerId p = 0; p < total; ++p)
      if (p != y) rest.push_back(p);
    const PlayerId local_target = target < y ? target : target - 1;
    const auto b = fix_nonseeded(graph.induced(rest), local_target, options);
    if (!b) continue;
    SpareResult out{y, {}};
    for (PlayerId p : b->leaves()) out.leaves.push_back(rest[p]);
    return out;
  }
  return std::nullopt;
}

std::optional<Bracket> fix_seeded_random(const TfpInstance& instance,
                                         const NonseededOptions& options,
                                         std::vector<SeedBlockStage>* trace) {
  instance.validate();
  const int n = instance.size();
  const PlayerId x = instance.target;
  const TournamentGraph& g = instance.graph;
  if (trace) trace->clear();

  if (instance.seeds.empty()) return fix_nonseeded(g, x, options);

  std::vector<int> rank(n, 0);
  std::vector<PlayerId> holder(n / 2 + 1, -1);
  for (int r = 1; r <= instance.seeds.count(); ++r) {
    rank[instance.seeds.holder(r)] = r;
    holder[r] = instance.seeds.holder(r);
  }
  int next = instance.seeds.count() + 1;
  for (PlayerId p = 0; p < n && next <= n / 2; ++p)
    if (p != x && rank[p] == 0) {
      rank[p] = next;
      holder[next++] = p;
    }

  std::vector<PlayerId> leaves(n, -1);
  const bool seeded_target = rank[x] != 0;
  std::vector<PlayerId> members;
  for (PlayerId p = 0; p < n; ++p)
    if (rank[p] == 0 || p == x) members.push_back(p);
  const auto local_x =
      static_cast<PlayerId>(std::find(members.begin(), members.end(), x) - members.begin());
  const TournamentGraph sub = g.induced(members);

  if (!seeded_target) {
    const auto b = fix_nonseeded(sub, local_x, options);
    if (!b) return std::nullopt;
    for (int q = 0; q < n / 2; ++q) leaves[2 * q + 1] = members[b->at(q)];
  } else {
    const auto spare = fix_nonseeded_with_spare(sub, local_x, options);
    if (!spare) return std::nullopt;
    for (int q = 0; q < n / 2; ++q) {
      leaves[2 * q + 1] = members[spare->leaves[q]];
      if (leaves[2 * q + 1] == x) leaves[2 * q] = members[spare->spare];
    }
  }

  // Stage at which the target's own seed block is placed.
  int x_level = 1 << 30;
  if (seeded_target)
    x_level = rank[x] <= 2 ? 1 : std::bit_width(static_cast<unsigned>(rank[x] - 1));
  const int x_pos = static_cast<int>(std::find(leaves.begin(), leaves.end(), x) - leaves.begin());
  const int rounds = floor_log2(n);

  for (int k = 1; k < rounds; ++k) {
    SeedBlockStage stage;
    stage.level = k;
    for (int r = k == 1 ? 1 : (1 << (k - 1)) + 1; r <= (1 << k); ++r)
      if (holder[r] != x) stage.block.push_back(holder[r]);

    for (int w = 0; w < (1 << k); ++w) {
      const SectionRef sec{k, w};
      bool occupied = k >= x_level && sec.contains(n, x_pos);
      for (int pos = sec.first(n); pos < sec.last(n) && !occupied; pos += 2)
        occupied = leaves[pos] != -1 && rank[leaves[pos]] != 0;
      if (!occupied) stage.free_sections.push_back(sec);
    }
    if (stage.free_sections.size() != stage.block.size())
      throw std::logic_error("stage " + std::to_string(k) + ": " +
                             std::to_string(stage.free_sections.size()) + " free sections for " +
                             std::to_string(stage.block.size()) + " seeds");

    // Opponent candidates per free section: unseeded players whose partner
    // slot is still empty, away from the target's half of its own section.
    std::vector<std::vector<int>> open(stage.free_sections.size());
    const SectionRef x_half = SectionRef::of(n, k + 1, x_pos);
    for (std::size_t i = 0; i < stage.free_sections.size(); ++i) {
      const SectionRef& sec = stage.free_sections[i];
      for (int pos = sec.first(n) + 1; pos < sec.last(n); pos += 2) {
        if (leaves[pos - 1] != -1) continue;
        if (seeded_target && sec.contains(n, x_pos) && x_half.contains(n, pos)) continue;
        open[i].push_back(pos);
      }
    }
    auto beaten_in = [&](PlayerId u, int i) {
      return std::any_of(open[i].begin(), open[i].end(),
                         [&](int pos) { return g.beats(leaves[pos], u); });
    };

    std::vector<int> slots(stage.free_sections.size());
    for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = static_cast<int>(i);
    for (PlayerId u : stage.block)
      for (int i : slots)
        if (beaten_in(u, i)) stage.edges.emplace_back(u, i);
    stage.matching = max_bipartite_matching(stage.block, slots, beaten_in);
    if (stage.matching.size() != static_cast<int>(stage.block.size())) {
      if (trace) trace->push_back(std::move(stage));
      return std::nullopt;
    }

    for (auto [u, i] : stage.matching.pairs) {
      int best = -1;
      for (int pos : open[i])
        if (g.beats(leaves[pos], u) && (best == -1 || leaves[pos] < leaves[best])) best = pos;
      leaves[best - 1] = u;
      stage.opponents.emplace_back(u, leaves[best]);
    }
    if (trace) trace->push_back(std::move(stage));
  }

  if (std::find(leaves.begin(), leaves.end(), -1) != leaves.end())
    throw std::logic_error("seed placement left empty positions");
  Bracket bracket(leaves);
  const ReplayResult replay = replay_bracket(bracket, g);
  if (!is_valid_bracket(bracket, instance.seeds) || replay.winner != x)
    throw std::logic_error("seeded random fixer produced a bracket that fails verification");
  for (const Match& m : replay.log.front())
    if (m.winner != x && rank[m.winner] != 0)
      throw std::logic_error("a seed survived round one");
  return bracket;
}

MatchingExperiment matching_probability_experiment(int m, double delta, int trials,
                                                   std::uint64_t rng_seed) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in [0, 1]");
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");

  MatchingExperiment out;
  out.m = m;
  out.delta = delta;
  out.trials = trials;
  std::vector<int> left(m), right(m);
  for (int i = 0; i < m; ++i) left[i] = right[i] = i;
  std::vector<std::uint8_t> edge(static_cast<std::size_t>(m) * m);
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(rng_seed, static_cast<std::uint64_t>(t)));
    for (auto& e : edge) e = uniform_unit(rng) < 1.0 - delta;
    const Matching match = max_bipartite_matching(
        left, right, [&](int u, int v) { return edge[static_cast<std::size_t>(u) * m + v] != 0; });
    if (match.size() == m) ++out.successes;
  }
  out.frequency = static_cast<double>(out.successes) / trials;
  out.lower_bound = 1.0 - std::pow(delta, m / 4.0);
  out.hypothesis_holds = std::pow(delta, m / 8.0) <= 1.0 / m;
  const double q = std::clamp(out.lower_bound, 0.0, 1.0);
  out.std_error = std::sqrt(q * (1.0 - q) / trials);
  return out;
}

}  // namespace knockout
