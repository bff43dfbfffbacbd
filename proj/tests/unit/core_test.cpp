#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>

#include "knockout/instance_io.hpp"
#include "knockout/matching.hpp"
#include "knockout/random.hpp"
#include "knockout/tournament.hpp"
#include "support/instances.hpp"
#include "support/oracles.hpp"

namespace knockout {
namespace {

std::vector<PlayerId> iota_vec(int n) {
  std::vector<PlayerId> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

TEST(TournamentGraph, DefaultIsTransitive) {
  TournamentGraph g(4);
  EXPECT_TRUE(g.beats(0, 3));
  EXPECT_FALSE(g.beats(3, 0));
  EXPECT_EQ(g.outdegree(0), 3);
  EXPECT_EQ(g.outdegree(3), 0);
  g.set_winner(3, 0);
  EXPECT_TRUE(g.beats(3, 0));
  EXPECT_FALSE(g.beats(0, 3));
  EXPECT_EQ(g.beaten_by(3), std::vector<PlayerId>{0});
  EXPECT_EQ(g.beaters_of(0), std::vector<PlayerId>{3});
}

TEST(TournamentGraph, InducedKeepsEdges) {
  Rng rng(1);
  const TournamentGraph g = testing::random_graph(8, rng);
  const std::vector<PlayerId> sub{5, 2, 7, 0};
  const TournamentGraph h = g.induced(sub);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (a != b) EXPECT_EQ(h.beats(a, b), g.beats(sub[a], sub[b]));
}

TEST(SeedAssignment, RejectsBadCounts) {
  EXPECT_THROW(SeedAssignment({0}), std::invalid_argument);
  EXPECT_THROW(SeedAssignment({0, 1, 2}), std::invalid_argument);
  EXPECT_THROW(SeedAssignment({0, 0}), std::invalid_argument);
  EXPECT_THROW(SeedAssignment({0, 1}).validate_for(2), std::invalid_argument);
  EXPECT_THROW(SeedAssignment({0, 9}).validate_for(8), std::invalid_argument);
  const SeedAssignment s({4, 1});
  EXPECT_EQ(s.rank_of(4), 1);
  EXPECT_EQ(s.rank_of(1), 2);
  EXPECT_EQ(s.rank_of(0), 0);
}

TEST(Bracket, RejectsNonPermutations) {
  EXPECT_THROW(Bracket({0, 1, 2}), std::invalid_argument);
  EXPECT_THROW(Bracket({0, 1, 1, 3}), std::invalid_argument);
  EXPECT_THROW(Bracket({0, 1, 2, 4}), std::invalid_argument);
  EXPECT_NO_THROW(Bracket({1, 0}));
}

TEST(Validity, TopTwoSeedsMustBeInOppositeHalves) {
  const SeedAssignment seeds({0, 1});
  EXPECT_TRUE(is_valid_bracket(Bracket({0, 2, 1, 3}), seeds));
  EXPECT_FALSE(is_valid_bracket(Bracket({0, 1, 2, 3}), seeds));
  EXPECT_TRUE(is_valid_bracket(Bracket({0, 1, 2, 3}), SeedAssignment()));
}

TEST(Validity, FourSeedsOnePerQuarter) {
  const SeedAssignment seeds({0, 1, 2, 3});
  EXPECT_TRUE(is_valid_bracket(Bracket({0, 4, 2, 5, 1, 6, 3, 7}), seeds));
  // ranks 3 and 4 share a quarter
  EXPECT_FALSE(is_valid_bracket(Bracket({0, 4, 2, 3, 1, 5, 6, 7}), seeds));
}

TEST(Validity, AgreesWithMeetingRoundRule) {
  Rng rng(7);
  for (int n : {4, 8, 16, 32}) {
    for (int trial = 0; trial < 300; ++trial) {
      const int s = testing::random_seed_count(n, rng);
      const SeedAssignment seeds = testing::random_seeds(n, s, rng);
      std::vector<PlayerId> leaves = iota_vec(n);
      shuffle(std::span<PlayerId>(leaves), rng);
      EXPECT_EQ(is_valid_bracket(Bracket(leaves), seeds),
                testing::valid_by_meeting_rounds(leaves, seeds));
    }
  }
}

TEST(Validity, InvariantUnderChildSwaps) {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const SeedAssignment seeds = testing::random_seeds(16, 4, rng);
    std::vector<PlayerId> leaves = iota_vec(16);
    shuffle(std::span<PlayerId>(leaves), rng);
    const bool before = is_valid_bracket(Bracket(leaves), seeds);
    // swap the two halves of a random subtree
    const int width = 1 << (1 + uniform_below(rng, 4));
    const int start = static_cast<int>(uniform_below(rng, 16 / width)) * width;
    std::rotate(leaves.begin() + start, leaves.begin() + start + width / 2,
                leaves.begin() + start + width);
    EXPECT_EQ(is_valid_bracket(Bracket(leaves), seeds), before);
  }
}

TEST(Replay, LogAndWinner) {
  TournamentGraph g(4);
  g.set_winner(3, 0);
  const ReplayResult r = replay_bracket(Bracket({0, 1, 2, 3}), g);
  EXPECT_EQ(r.winner, 0);
  ASSERT_EQ(r.log.size(), 2u);
  EXPECT_EQ(r.log[0][0], (Match{0, 1, 0}));
  EXPECT_EQ(r.log[0][1], (Match{2, 3, 2}));
  EXPECT_EQ(r.log[1][0], (Match{0, 2, 0}));
  EXPECT_EQ(bracket_winner(std::vector<PlayerId>{0, 1, 2, 3}, g), 0);
  EXPECT_EQ(bracket_winner(std::vector<PlayerId>{0, 3, 1, 2}, g), 1);
  EXPECT_THROW(replay_bracket(Bracket({0, 1}), g), std::invalid_argument);
}

TEST(Replay, MatchesFold) {
  Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const TournamentGraph g = testing::random_graph(16, rng);
    std::vector<PlayerId> leaves = iota_vec(16);
    shuffle(std::span<PlayerId>(leaves), rng);
    EXPECT_EQ(replay_bracket(Bracket(leaves), g).winner, testing::fold_winner(leaves, g));
  }
}

TEST(AnyValidBracket, Examples) {
  EXPECT_EQ(any_valid_bracket(4, SeedAssignment({0, 1})), Bracket({0, 2, 1, 3}));
  EXPECT_EQ(any_valid_bracket(2, SeedAssignment()), Bracket({0, 1}));
  const std::vector<PlayerId> players{7, 3, 5, 1};
  const std::vector<PlayerId> order{5, 1};
  const auto leaves = any_valid_bracket(players, order);
  const auto pos5 = std::find(leaves.begin(), leaves.end(), 5) - leaves.begin();
  const auto pos1 = std::find(leaves.begin(), leaves.end(), 1) - leaves.begin();
  EXPECT_NE(pos5 / 2, pos1 / 2);
  const std::vector<PlayerId> missing{9};
  EXPECT_THROW(any_valid_bracket(players, missing), std::invalid_argument);
}

TEST(AnyValidBracket, AlwaysValid) {
  Rng rng(10);
  for (int n : {2, 4, 8, 16, 64}) {
    for (int trial = 0; trial < 50; ++trial) {
      const SeedAssignment seeds = testing::random_seeds(n, testing::random_seed_count(n, rng), rng);
      const Bracket b = any_valid_bracket(n, seeds);
      EXPECT_TRUE(testing::valid_by_meeting_rounds(b.leaves(), seeds));
      const std::vector<PlayerId> all = iota_vec(n);
      const auto r = random_valid_bracket(all, seeds.holders(), rng);
      EXPECT_TRUE(testing::valid_by_meeting_rounds(r, seeds));
    }
  }
}

TEST(CanonicalForm, IdentifiesSwappedTrees) {
  EXPECT_EQ(canonical_form(Bracket({3, 2, 1, 0})), Bracket({0, 1, 2, 3}));
  EXPECT_EQ(canonical_form(Bracket({2, 0, 3, 1})), Bracket({0, 2, 1, 3}));
  EXPECT_NE(canonical_form(Bracket({0, 2, 1, 3})), canonical_form(Bracket({0, 1, 2, 3})));
}

int brute_matching_size(int a, int b, const std::vector<std::vector<bool>>& adj) {
  // Try every injective assignment by recursion over left vertices.
  int best = 0;
  std::vector<bool> used(b, false);
  std::function<void(int, int)> go = [&](int i, int size) {
    best = std::max(best, size);
    if (i == a) return;
    go(i + 1, size);
    for (int j = 0; j < b; ++j)
      if (adj[i][j] && !used[j]) {
        used[j] = true;
        go(i + 1, size + 1);
        used[j] = false;
      }
  };
  go(0, 0);
  return best;
}

TEST(Matching, MaximumAgainstBruteForce) {
  Rng rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const int a = 1 + static_cast<int>(uniform_below(rng, 6));
    const int b = 1 + static_cast<int>(uniform_below(rng, 6));
    std::vector<std::vector<bool>> adj(a, std::vector<bool>(b));
    for (auto& row : adj)
      for (std::size_t j = 0; j < row.size(); ++j) row[j] = uniform_below(rng, 3) == 0;
    std::vector<int> left(a), right(b);
    std::iota(left.begin(), left.end(), 100);
    std::iota(right.begin(), right.end(), 200);
    const Matching m = max_bipartite_matching(
        left, right, [&](int l, int r) { return adj[l - 100][r - 200]; });
    EXPECT_EQ(m.size(), brute_matching_size(a, b, adj));
    std::vector<bool> lseen(a), rseen(b);
    for (auto [l, r] : m.pairs) {
      EXPECT_TRUE(adj[l - 100][r - 200]);
      EXPECT_FALSE(lseen[l - 100]);
      EXPECT_FALSE(rseen[r - 200]);
      lseen[l - 100] = rseen[r - 200] = true;
    }
  }
}

const char* const kSample =
    "tfp v1\n"
    "n 4\n"
    "s 2\n"
    "seeds 2 0\n"
    "target 1\n"
    "0110\n"
    "0011\n"
    "0001\n"
    "1000\n";

TEST(InstanceIo, RoundTripIsByteIdentical) {
  const TfpInstance inst = parse_instance(kSample);
  EXPECT_EQ(inst.size(), 4);
  EXPECT_EQ(inst.seeds.holder(1), 2);
  EXPECT_EQ(inst.target, 1);
  EXPECT_TRUE(inst.graph.beats(3, 0));
  EXPECT_EQ(format_instance(inst), kSample);

  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 << uniform_below(rng, 5);
    const TfpInstance r = testing::random_instance(n, testing::random_seed_count(n, rng), rng);
    const std::string text = format_instance(r);
    EXPECT_EQ(parse_instance(text), r);
    EXPECT_EQ(format_instance(parse_instance(text)), text);
  }
}

TEST(InstanceIo, DocumentWithBracket) {
  const std::string text = std::string(kSample) + "bracket 0 1 2 3\n";
  const InstanceDocument doc = parse_document(text);
  ASSERT_TRUE(doc.bracket.has_value());
  EXPECT_EQ(*doc.bracket, Bracket({0, 1, 2, 3}));
  EXPECT_EQ(format_bracket(*doc.bracket), "bracket 0 1 2 3\n");
  EXPECT_EQ(parse_bracket("bracket 1 0\n"), Bracket({1, 0}));
}

int error_line(const std::string& text) {
  try {
    parse_document(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

std::string with_line(int line_no, const std::string& replacement) {
  std::string out;
  std::string_view rest = kSample;
  for (int i = 1; !rest.empty(); ++i) {
    const auto end = rest.find('\n');
    out += i == line_no ? replacement : std::string(rest.substr(0, end));
    out += '\n';
    rest.remove_prefix(end + 1);
  }
  return out;
}

TEST(InstanceIo, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line(with_line(1, "tfp v2")), 1);
  EXPECT_EQ(error_line(with_line(2, "n 6")), 2);
  EXPECT_EQ(error_line(with_line(3, "s 3")), 3);
  EXPECT_EQ(error_line(with_line(4, "seeds 2 2")), 4);
  EXPECT_EQ(error_line(with_line(4, "seeds 2 7")), 4);
  EXPECT_EQ(error_line(with_line(5, "target 4")), 5);
  EXPECT_EQ(error_line(with_line(5, "target  1")), 5);
  EXPECT_EQ(error_line(with_line(6, "011")), 6);
  EXPECT_EQ(error_line(with_line(7, "0111")), 7);
  EXPECT_EQ(error_line(with_line(8, "0002")), 8);
  EXPECT_EQ(error_line(with_line(9, "0000")), 6);  // (0,3) and (3,0) both 0
  EXPECT_EQ(error_line(std::string(kSample) + "bracket 0 1 2\n"), 10);
  EXPECT_EQ(error_line(std::string(kSample) + "bracket 0 1 2 3\nextra\n"), 11);
  EXPECT_EQ(error_line("tfp v1\r\nn 2\n"), 1);
  EXPECT_EQ(error_line("tfp v1\nn 4\n"), 3);
  EXPECT_THROW(parse_instance(std::string(kSample) + "bracket 0 1 2 3\n"), ParseError);
}

}  // namespace
}  // namespace knockout
