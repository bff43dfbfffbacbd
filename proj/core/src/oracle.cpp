#include "knockout/oracle.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace knockout::oracle {

namespace {

using Mask = std::uint32_t;

// Writes every unordered tree over `players` into leaves[offset, offset+|players|)
// and invokes `done` for each completed arrangement of this subtree.
void arrange(Mask players, int offset, std::vector<PlayerId>& leaves,
             const std::function<void()>& done) {
  const int size = std::popcount(players);
  if (size == 1) {
    leaves[offset] = std::countr_zero(players);
    done();
    return;
  }
  const int half = size / 2;
  const Mask lowest = players & (~players + 1);
  const Mask rest = players ^ lowest;
  // Left subtree: the lowest player plus any half-1 others.
  for (Mask sub = rest;; sub = (sub - 1) & rest) {
    if (std::popcount(sub) == half - 1) {
      const Mask left = sub | lowest;
      const Mask right = players ^ left;
      arrange(left, offset, leaves, [&] { arrange(right, offset + half, leaves, done); });
    }
    if (sub == 0) break;
  }
}

void check_cap(const TfpInstance& instance, int max_n) {
  instance.validate();
  if (max_n > kOverrideMaxN)
    throw std::invalid_argument("oracle cap cannot exceed " + std::to_string(kOverrideMaxN));
  if (instance.size() > max_n)
    throw std::invalid_argument("oracle enumeration limited to n <= " + std::to_string(max_n) +
                                ", got n = " + std::to_string(instance.size()));
}

}  // namespace

void for_each_valid_bracket(const TfpInstance& instance,
                            const std::function<void(const Bracket&)>& visit, int max_n) {
  check_cap(instance, max_n);
  const int n = instance.size();
  std::vector<PlayerId> leaves(n);
  const Mask all = (Mask{1} << n) - 1;
  arrange(all, 0, leaves, [&] {
    Bracket bracket(leaves);
    if (is_valid_bracket(bracket, instance.seeds)) visit(bracket);
  });
}

std::vector<Bracket> enumerate_valid_brackets(const TfpInstance& instance, int max_n) {
  std::vector<Bracket> out;
  for_each_valid_bracket(instance, [&](const Bracket& b) { out.push_back(b); }, max_n);
  return out;
}

WinnerCounts count_winners_bruteforce(const TfpInstance& instance, int max_n) {
  WinnerCounts result;
  result.counts.assign(instance.size(), 0);
  for_each_valid_bracket(
      instance, [&](const Bracket& b) { ++result.counts[replay_bracket(b, instance.graph).winner]; },
      max_n);
  return result;
}

bool is_knockout_winner_bruteforce(const TfpInstance& instance, int max_n) {
  return count_winners_bruteforce(instance, max_n).counts[instance.target] > 0;
}

}  // namespace knockout::oracle
