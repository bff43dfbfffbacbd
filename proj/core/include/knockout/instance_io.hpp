#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "knockout/tournament.hpp"

namespace knockout {

/// Malformed instance or bracket text. `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Instance text, LF line endings, single spaces:
///
///     tfp v1
///     n 8
///     s 4
///     seeds 3 0 5 7        (omitted when s = 0)
///     target 3
///     01011010             (n rows; row i col j is '1' iff i beats j)
///     ...
std::string format_instance(const TfpInstance& instance);

/// `bracket 3 1 0 2 ...` followed by LF.
std::string format_bracket(const Bracket& bracket);

/// An instance optionally followed by a single bracket line.
struct InstanceDocument {
  TfpInstance instance;
  std::optional<Bracket> bracket;
};

/// Strict parser; throws ParseError with the offending line number.
InstanceDocument parse_document(std::string_view text);

TfpInstance parse_instance(std::string_view text);

/// Parses a standalone bracket text (one `bracket ...` line).
Bracket parse_bracket(std::string_view text);

}  // namespace knockout
