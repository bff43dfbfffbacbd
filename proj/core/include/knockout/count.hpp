#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace knockout {

/// Exact counter type for bracket counts and set-function values.
///
/// Arithmetic is performed in the ring Z / 2^128. Every bracket count that can
/// arise for n <= 32 players is below 32! / 2^31 < 2^88, so counts are exact.
/// Signed quantities (general set functions, intermediate Moebius sums) are
/// stored in two's complement and are exact while |value| < 2^127.
using Wide = unsigned __int128;

std::string to_string(Wide value);
std::string to_signed_string(Wide value);

inline Wide from_signed(std::int64_t value) {
  return static_cast<Wide>(static_cast<__int128>(value));
}

inline __int128 as_signed(Wide value) { return static_cast<__int128>(value); }

/// Number of canonical valid brackets won by each player.
struct WinnerCounts {
  std::vector<Wide> counts;

  Wide total() const {
    Wide sum = 0;
    for (Wide c : counts) sum += c;
    return sum;
  }

  bool operator==(const WinnerCounts&) const = default;
};

}  // namespace knockout
