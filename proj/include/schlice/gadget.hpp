// schlice :: 3SAT hardness gadgets and the round-trip harness
//
// For a 3-CNF over variables theta_1..theta_n with m clauses, the generated
// schema is one while loop whose body applies H to v, runs a ladder of
// one-armed conditionals assigning to x and b, and ends with a nested test
// `if Q_test(v) { if q_test(x) { v := F_test(v); } }`. The companion path
// enters the loop body 4 + 3n + 6n(n-1) + m times; its q_test consequences
// tie the survival of each g_i / g_i' pair to a consistent valuation, so a
// non-trivial dynamic slice exists exactly when the formula is satisfiable.
#pragma once

#include <cassert>
#include <set>
#include <string>
#include <vector>

#include "schlice/errors.hpp"
#include "schlice/paths.hpp"
#include "schlice/quotient.hpp"
#include "schlice/sat.hpp"
#include "schlice/schema.hpp"
#include "schlice/slice.hpp"

namespace schlice {

struct GadgetSegment {
  std::string type;  // "0.1".."0.3", "1", "2", "2'", "3", "4.1".."4.3", "4.1'".."4.3'", "5"
  int i = 0;         // variable index for types 2/2'/3/4*
  int j = 0;         // second variable index for types 4*
  int clause = 0;    // 1-based clause index for type 5
  std::size_t first_letter = 0;
  std::size_t letter_count = 0;
};

struct GadgetInstance {
  Cnf3 cnf;
  SchemaPtr schema;  // site-numbered, ends with `label end;`
  SymbolTable symbols;
  Path rho;          // terminal path of the loop, up to and including p:F
  std::string criterion_var = "v";
  std::string label = "end";
  std::size_t body_entries = 0;
  std::vector<GadgetSegment> segments;
};

namespace detail {

inline std::string gadget_var_pred(int i, bool primed) {
  return "q_" + std::to_string(i) + (primed ? "'" : "");
}
inline std::string gadget_var_fn(int i, bool primed) {
  return "g_" + std::to_string(i) + (primed ? "'" : "");
}

// Advances the cursor through one loop-body pass: enter on the true branch
// of the loop guard, then take exactly the listed predicates true.
inline void drive_pass(PathCursor& cursor, Path& rho, const std::string& guard,
                       const std::set<std::string>& taking) {
  std::vector<Letter> at_guard = cursor.next_letters();
  if (at_guard.size() != 2 || at_guard.front().name != guard)
    throw PathError("gadget generator lost the loop guard");
  cursor.advance(at_guard.front());
  rho.push_back(at_guard.front());
  while (true) {
    std::vector<Letter> next = cursor.next_letters();
    if (next.empty() || (next.front().is_pred() && next.front().name == guard))
      return;  // back at the guard (or done, which cannot happen inside the loop)
    const Letter& chosen =
        next.size() == 1 ? next.front() : next[taking.count(next.front().name) ? 0 : 1];
    cursor.advance(chosen);
    rho.push_back(chosen);
  }
}

}  // namespace detail

inline GadgetInstance generate_3sat_gadget(const Cnf3& cnf) {
  if (cnf.num_vars < 1) throw BudgetError("gadget needs at least one variable");
  for (const Clause& clause : cnf.clauses)
    for (const Lit& lit : clause.lits)
      if (lit.var < 1 || lit.var > cnf.num_vars)
        throw BudgetError("clause literal out of range");

  const int n = cnf.num_vars;
  const int m = static_cast<int>(cnf.clauses.size());

  GadgetInstance g;
  g.cnf = cnf;

  auto guarded = [](const std::string& pred, SchemaPtr stmt) {
    return Schema::if_(pred, {"v"}, std::move(stmt), Schema::skip());
  };
  std::vector<SchemaPtr> body;
  body.push_back(Schema::assign("v", "H", {"v"}));
  body.push_back(guarded("q_good", Schema::assign("x", "g_good", {})));
  body.push_back(guarded("q_bad", Schema::assign("x", "g_bad", {})));
  body.push_back(guarded("q_link", Schema::assign("b", "g_link", {"x"})));
  body.push_back(guarded("q_reset", Schema::assign("b", "g_reset", {})));
  body.push_back(guarded("Q_linkreset", Schema::assign("v", "F_linkreset", {"b", "v"})));
  for (int i = 1; i <= n; ++i) {
    body.push_back(guarded(detail::gadget_var_pred(i, false),
                           Schema::assign("x", detail::gadget_var_fn(i, false), {"b"})));
    body.push_back(guarded(detail::gadget_var_pred(i, true),
                           Schema::assign("x", detail::gadget_var_fn(i, true), {"b"})));
  }
  body.push_back(Schema::if_(
      "Q_test", {"v"},
      Schema::if_("q_test", {"x"}, Schema::assign("v", "F_test", {"v"}), Schema::skip()),
      Schema::skip()));
  SchemaPtr loop = Schema::while_("p", {"v"}, Schema::seq(std::move(body)));
  g.schema = with_site_numbering(Schema::seq({loop, Schema::label("end")}));
  g.symbols = collect_symbols(g.schema);

  // Pass plan, in the order the path visits the loop body.
  struct Pass {
    GadgetSegment seg;
    std::set<std::string> taking;
  };
  std::vector<Pass> passes;
  passes.push_back({{"0.1"}, {"q_good", "q_link", "Q_linkreset"}});
  passes.push_back({{"0.2"}, {"q_reset", "Q_linkreset"}});
  passes.push_back({{"0.3"}, {"q_bad", "q_link", "Q_linkreset"}});
  passes.push_back({{"1"}, {"q_good", "Q_test", "q_test"}});
  for (int i = 1; i <= n; ++i)
    passes.push_back({{"2", i},
                      {"q_good", "q_reset", detail::gadget_var_pred(i, false),
                       "Q_test", "q_test"}});
  for (int i = 1; i <= n; ++i)
    passes.push_back({{"2'", i},
                      {"q_good", "q_reset", detail::gadget_var_pred(i, true),
                       "Q_test", "q_test"}});
  for (int i = 1; i <= n; ++i)
    passes.push_back({{"3", i},
                      {"q_good", "q_link", detail::gadget_var_pred(i, true),
                       "Q_test", "q_test"}});
  for (bool primed_j : {false, true}) {
    const char* stem = primed_j ? "4.1'" : "4.1";
    const char* stem2 = primed_j ? "4.2'" : "4.2";
    const char* stem3 = primed_j ? "4.3'" : "4.3";
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        passes.push_back({{stem, i, j},
                          {"q_good", "q_reset", detail::gadget_var_pred(i, false)}});
        passes.push_back({{stem2, i, j}, {"q_link", detail::gadget_var_pred(i, true)}});
        passes.push_back({{stem3, i, j},
                          {"q_reset", detail::gadget_var_pred(j, primed_j),
                           "Q_test", "q_test"}});
      }
  }
  for (int k = 1; k <= m; ++k) {
    Pass pass{{"5", 0, 0, k}, {"q_bad", "q_reset", "Q_test", "q_test"}};
    for (const Lit& lit : cnf.clauses[static_cast<std::size_t>(k - 1)].lits)
      pass.taking.insert(detail::gadget_var_pred(lit.var, lit.negated));
    passes.push_back(std::move(pass));
  }

  PathCursor cursor(g.schema);
  for (Pass& pass : passes) {
    pass.seg.first_letter = g.rho.size();
    detail::drive_pass(cursor, g.rho, "p", pass.taking);
    pass.seg.letter_count = g.rho.size() - pass.seg.first_letter;
    g.segments.push_back(pass.seg);
  }
  Letter exit = Letter::pred("p", {"v"}, false);
  cursor.advance(exit);
  g.rho.push_back(exit);
  g.body_entries = passes.size();
  assert(g.body_entries ==
         static_cast<std::size_t>(4 + 3 * n + 6 * n * (n - 1) + m));
  return g;
}

// The quotient that keeps g_i/q_i exactly when the valuation makes theta_i
// true and g_i'/q_i' otherwise; this is the satisfiable-direction witness.
inline SchemaPtr valuation_quotient(const GadgetInstance& g,
                                    const std::vector<bool>& assignment) {
  std::set<std::string> doomed;
  for (int i = 1; i <= g.cnf.num_vars; ++i)
    doomed.insert(detail::gadget_var_pred(i, assignment[static_cast<std::size_t>(i - 1)]));
  std::set<const Schema*> removed;
  visit(g.schema, [&](const SchemaPtr& node) {
    if (node->kind() == NodeKind::If && doomed.count(node->name()))
      removed.insert(node.get());
  });
  return delete_statements(g.schema, removed);
}

struct RoundTripReport {
  SatResult sat;
  bool pfds_exists = false;
  bool ds_exists = false;
  bool witness_checked = false;  // satisfiable case: valuation quotient accepted
  bool agree = false;
  std::size_t pfds_quotients = 0;
  std::size_t ds_quotients = 0;
};

// Compares brute-force satisfiability with non-trivial-slice existence in
// both modes, and verifies the valuation witness when satisfiable.
inline RoundTripReport round_trip(TermStore& store, const Cnf3& cnf,
                                  int budget_sites = 24) {
  GadgetInstance g = generate_3sat_gadget(cnf);
  SliceCriterion criterion =
      make_criterion(store, g.schema, g.rho, {g.criterion_var}, g.label);
  RoundTripReport report;
  report.sat = brute_force_sat(cnf);
  FindSlicesOptions pfds{SliceMode::Pfds, SliceWant::ExistsNonTrivial, budget_sites};
  FindSlicesOptions ds{SliceMode::Ds, SliceWant::ExistsNonTrivial, budget_sites};
  FindSlicesReport pfds_report = find_slices(store, criterion, pfds);
  FindSlicesReport ds_report = find_slices(store, criterion, ds);
  report.pfds_exists = pfds_report.exists;
  report.ds_exists = ds_report.exists;
  report.pfds_quotients = pfds_report.quotients_checked;
  report.ds_quotients = ds_report.quotients_checked;
  if (report.sat.satisfiable) {
    SchemaPtr witness = valuation_quotient(g, report.sat.assignment);
    report.witness_checked = check_pfds(store, criterion, witness).accepted;
  }
  report.agree = (report.sat.satisfiable == report.pfds_exists) &&
                 (report.sat.satisfiable == report.ds_exists) &&
                 (!report.sat.satisfiable || report.witness_checked);
  return report;
}

}  // namespace schlice
