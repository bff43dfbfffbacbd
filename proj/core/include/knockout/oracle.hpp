#pragma once

#include <functional>
#include <vector>

#include "knockout/count.hpp"
#include "knockout/tournament.hpp"

namespace knockout {

/// Ground truth by exhaustive enumeration. Deliberately unoptimized.
///
/// Brackets are unordered match trees: exactly one representative per tree is
/// visited, the canonical one in which the left child of every internal node
/// holds the smaller minimum player id. There are n! / 2^(n-1) such trees
/// (3 at n = 4, 315 at n = 8, 638512875 at n = 16).
namespace oracle {

constexpr int kDefaultMaxN = 8;
constexpr int kOverrideMaxN = 16;

/// Calls `visit` once per canonical valid bracket. Throws
/// std::invalid_argument when n exceeds `max_n` (at most kOverrideMaxN).
void for_each_valid_bracket(const TfpInstance& instance,
                            const std::function<void(const Bracket&)>& visit,
                            int max_n = kDefaultMaxN);

std::vector<Bracket> enumerate_valid_brackets(const TfpInstance& instance,
                                              int max_n = kDefaultMaxN);

WinnerCounts count_winners_bruteforce(const TfpInstance& instance, int max_n = kDefaultMaxN);

bool is_knockout_winner_bruteforce(const TfpInstance& instance, int max_n = kDefaultMaxN);

}  // namespace oracle
}  // namespace knockout
