// schlice :: 3-CNF formulas, simplified DIMACS, brute-force satisfiability
#pragma once

#include <array>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "schlice/errors.hpp"

namespace schlice {

struct Lit {
  int var;       // 1-based
  bool negated;
  bool operator==(const Lit&) const = default;
};

struct Clause {
  std::array<Lit, 3> lits;
  bool operator==(const Clause&) const = default;

  bool satisfied_by(const std::vector<bool>& assignment) const {
    for (const Lit& lit : lits)
      if (assignment[static_cast<std::size_t>(lit.var - 1)] != lit.negated) return true;
    return false;
  }
};

struct Cnf3 {
  int num_vars = 0;
  std::vector<Clause> clauses;
};

// Simplified DIMACS: a `p cnf <vars> <clauses>` header, then one clause per
// line as three signed integers terminated by 0. `#` and `c` lines are
// comments.
inline Cnf3 parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  Cnf3 cnf;
  int expected_clauses = -1;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c" || first[0] == '#') continue;
    if (first == "p") {
      std::string kind;
      if (!(ls >> kind >> cnf.num_vars >> expected_clauses) || kind != "cnf")
        throw ParseError("malformed DIMACS header", line_no, 1);
      continue;
    }
    std::istringstream cs(line);
    std::vector<int> nums;
    int x;
    while (cs >> x) nums.push_back(x);
    if (nums.empty()) continue;
    if (nums.size() != 4 || nums.back() != 0)
      throw ParseError("expected three literals terminated by 0", line_no, 1);
    Clause clause{};
    for (int i = 0; i < 3; ++i) {
      int lit = nums[static_cast<std::size_t>(i)];
      if (lit == 0 || std::abs(lit) > cnf.num_vars)
        throw ParseError("literal " + std::to_string(lit) + " out of range", line_no, 1);
      clause.lits[static_cast<std::size_t>(i)] = Lit{std::abs(lit), lit < 0};
    }
    cnf.clauses.push_back(clause);
  }
  if (cnf.num_vars <= 0)
    throw ParseError("missing 'p cnf' header", line_no, 1);
  if (expected_clauses >= 0 &&
      expected_clauses != static_cast<int>(cnf.clauses.size()))
    throw ParseError("header announces " + std::to_string(expected_clauses) +
                         " clauses but " + std::to_string(cnf.clauses.size()) +
                         " were given",
                     line_no, 1);
  return cnf;
}

inline std::string print_dimacs(const Cnf3& cnf) {
  std::string out = "p cnf " + std::to_string(cnf.num_vars) + " " +
                    std::to_string(cnf.clauses.size()) + "\n";
  for (const Clause& clause : cnf.clauses) {
    for (const Lit& lit : clause.lits)
      out += std::to_string(lit.negated ? -lit.var : lit.var) + " ";
    out += "0\n";
  }
  return out;
}

struct SatResult {
  bool satisfiable = false;
  std::vector<bool> assignment;  // valid when satisfiable
};

// Exhaustive truth-table decision, capped at 20 variables.
inline SatResult brute_force_sat(const Cnf3& cnf) {
  if (cnf.num_vars < 1 || cnf.num_vars > 20)
    throw BudgetError("brute-force SAT handles 1..20 variables, got " +
                      std::to_string(cnf.num_vars));
  const std::uint32_t count = 1u << cnf.num_vars;
  std::vector<bool> assignment(static_cast<std::size_t>(cnf.num_vars));
  for (std::uint32_t bits = 0; bits < count; ++bits) {
    for (int v = 0; v < cnf.num_vars; ++v)
      assignment[static_cast<std::size_t>(v)] = (bits >> v) & 1u;
    bool ok = true;
    for (const Clause& clause : cnf.clauses)
      if (!clause.satisfied_by(assignment)) {
        ok = false;
        break;
      }
    if (ok) return {true, assignment};
  }
  return {false, {}};
}

}  // namespace schlice
