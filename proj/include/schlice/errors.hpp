// schlice :: error types shared across the library
#pragma once

#include <stdexcept>
#include <string>

namespace schlice {

// Malformed schema construction or symbol-table clash.
struct SymbolError : std::runtime_error {
  explicit SymbolError(const std::string& what) : std::runtime_error(what) {}
};

// Concrete-syntax error with a source position.
struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(const std::string& what, int line_, int column_)
      : std::runtime_error(what + " at " + std::to_string(line_) + ":" +
                           std::to_string(column_)),
        line(line_),
        column(column_) {}
};

// A word that is not a path through the schema it was given with.
struct PathError : std::runtime_error {
  explicit PathError(const std::string& what) : std::runtime_error(what) {}
};

// Slicing criterion that violates its preconditions (bad quotient, missing
// label, inexecutable path).
struct CriterionError : std::runtime_error {
  explicit CriterionError(const std::string& what) : std::runtime_error(what) {}
};

// Lattice search asked to cover more deletable sites than the budget allows.
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace schlice
