#pragma once

#include <stdexcept>
#include <string>

namespace wm {

// Bad input text: malformed word, malformed stat expression, bad flag value.
// Carries a position so the CLI can point at the offending character.
struct parse_error : std::runtime_error {
  std::size_t pos;
  explicit parse_error(const std::string& msg, std::size_t at = 0)
      : std::runtime_error(msg), pos(at) {}
};

// A configurable resource cutoff was hit (enumeration too large, exact
// summation over a symmetric group too big, ...).  The message names the
// budget that ran out so callers can decide whether to raise it.
struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An internal consistency check failed.  Always a bug, never bad input.
struct internal_error : std::logic_error {
  explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace wm
