#include "knockout/count.hpp"

#include <algorithm>

namespace knockout {

std::string to_string(Wide value) {
  if (value == 0) return "0";
  std::string digits;
  while (value != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::string to_signed_string(Wide value) {
  const __int128 s = as_signed(value);
  if (s >= 0) return to_string(value);
  return "-" + to_string(static_cast<Wide>(-s));
}

}  // namespace knockout
