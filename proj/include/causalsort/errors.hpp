#pragma once

#include <stdexcept>
#include <string>

namespace causalsort {

// A dataset column with zero empirical variance where a nonzero one is
// required (standardization, R^2 targets).
class DegenerateColumnError : public std::runtime_error {
 public:
  DegenerateColumnError(int column, const std::string& name)
      : std::runtime_error("degenerate column " + std::to_string(column) +
                           (name.empty() ? "" : " ('" + name + "')") +
                           ": zero empirical variance"),
        column_(column) {}
  int column() const { return column_; }

 private:
  int column_;
};

// Sortability is undefined on graphs without directed paths (the
// denominator of every weighting is zero).
class UndefinedSortabilityError : public std::runtime_error {
 public:
  explicit UndefinedSortabilityError(const std::string& what)
      : std::runtime_error(what) {}
};

// Malformed input file; carries a 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long line = -1)
      : std::runtime_error(line >= 0 ? what + " (line " + std::to_string(line) + ")"
                                     : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

}  // namespace causalsort
