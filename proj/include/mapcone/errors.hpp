#pragma once

#include <stdexcept>
#include <string>

namespace mapcone {

/// Malformed or inconsistent input data (parse errors, degree mismatches,
/// unknown basis names). Carries an optional source location for parsers.
struct FormatError : std::runtime_error {
  int line = 0;
  int column = 0;

  explicit FormatError(const std::string& msg, int line_ = 0, int column_ = 0)
      : std::runtime_error(msg), line(line_), column(column_) {}
};

/// A computation ran into a configured resource bound (polynomial degree cap,
/// bracket arity truncation). `needed` is the capacity that would suffice.
struct CapacityError : std::runtime_error {
  long long needed = 0;

  explicit CapacityError(const std::string& msg, long long needed_)
      : std::runtime_error(msg), needed(needed_) {}
};

/// A precondition on operation arguments was violated.
struct ArgumentError : std::runtime_error {
  explicit ArgumentError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mapcone
