#include "knockout/reductions.hpp"

#include <stdexcept>

#include "knockout/random.hpp"

namespace knockout {

namespace {

void check_source(const TfpInstance& source) {
  source.validate();
  if (!source.seeds.empty()) throw std::invalid_argument("source instance must be non-seeded");
}

// Orients a free edge: lower id wins unless a generator is supplied.
void free_edge(TournamentGraph& g, PlayerId a, PlayerId b, std::optional<Rng>& rng) {
  if (rng && ((*rng)() & 1))
    g.set_winner(b, a);
  else
    g.set_winner(a, b);
}

}  // namespace

ReductionOutput reduce_to_seeded_constant(const TfpInstance& source, int s_target,
                                          const ReductionOptions& options) {
  check_source(source);
  if (!is_power_of_two(s_target) || s_target < 2)
    throw std::invalid_argument("s_target must be a power of two >= 2");
  const int n = source.size();
  const int t = floor_log2(s_target);
  const int total = n << t;
  const PlayerId x = source.target;
  std::optional<Rng> rng;
  if (options.shuffle_seed) rng.emplace(*options.shuffle_seed);

  auto first_of = [&](int i) { return n << (i - 1); };  // V_i = [n 2^(i-1), n 2^i)
  std::vector<Provenance> prov(total);
  for (PlayerId v = 0; v < n; ++v) prov[v] = {PlayerRole::kOriginal, 0, v};
  for (int i = 1; i <= t; ++i)
    for (PlayerId p = first_of(i); p < 2 * first_of(i); ++p)
      prov[p] = {p == first_of(i) ? PlayerRole::kGadgetApex : PlayerRole::kGadgetMember, i, -1};

  TournamentGraph g(total);
  for (PlayerId a = 0; a < total; ++a) {
    for (PlayerId b = a + 1; b < total; ++b) {
      const int ga = prov[a].gadget;
      const int gb = prov[b].gadget;
      if (ga == 0 && gb == 0) {
        source.graph.beats(a, b) ? g.set_winner(a, b) : g.set_winner(b, a);
      } else if (ga == 0) {
        (a == x && prov[b].role == PlayerRole::kGadgetApex) ? g.set_winner(a, b)
                                                             : g.set_winner(b, a);
      } else if (ga == gb && prov[a].role == PlayerRole::kGadgetApex) {
        g.set_winner(a, b);
      } else {
        free_edge(g, a, b, rng);
      }
    }
  }

  // Members of each gadget in the order they are handed seeds.
  std::vector<std::vector<PlayerId>> pool(t + 1);
  for (int i = 1; i <= t; ++i) {
    for (PlayerId p = first_of(i) + 1; p < 2 * first_of(i); ++p) pool[i].push_back(p);
    if (rng) shuffle(std::span<PlayerId>(pool[i]), *rng);
  }
  std::vector<std::size_t> used(t + 1, 0);

  std::vector<PlayerId> holders{x, first_of(t)};
  for (int j = 1; j < t; ++j) {
    holders.push_back(first_of(t - j));
    for (int i = t - j + 1; i <= t; ++i)
      for (int c = 0; c < (1 << (i - (t - j + 1))); ++c) holders.push_back(pool[i][used[i]++]);
  }

  ReductionOutput out{TfpInstance{std::move(g), SeedAssignment(std::move(holders)), x},
                      std::move(prov)};
  out.instance.validate();
  return out;
}

ReductionOutput reduce_to_seeded_half(const TfpInstance& source, const ReductionOptions& options) {
  check_source(source);
  const int n = source.size();
  std::optional<Rng> rng;
  if (options.shuffle_seed) rng.emplace(*options.shuffle_seed);

  TournamentGraph g(2 * n);
  for (PlayerId a = 0; a < n; ++a)
    for (PlayerId b = a + 1; b < n; ++b)
      source.graph.beats(a, b) ? g.set_winner(a, b) : g.set_winner(b, a);
  for (PlayerId a = n; a < 2 * n; ++a)
    for (PlayerId b = a + 1; b < 2 * n; ++b) free_edge(g, a, b, rng);

  std::vector<Provenance> prov(2 * n);
  std::vector<PlayerId> holders;
  for (PlayerId v = 0; v < n; ++v) prov[v] = {PlayerRole::kOriginal, 0, v};
  for (PlayerId p = n; p < 2 * n; ++p) {
    prov[p] = {PlayerRole::kSeedFiller, 0, -1};
    holders.push_back(p);
  }

  ReductionOutput out{TfpInstance{std::move(g), SeedAssignment(std::move(holders)), source.target},
                      std::move(prov)};
  out.instance.validate();
  return out;
}

}  // namespace knockout
