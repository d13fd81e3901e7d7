// schlice :: built-in worked examples with their expected verdicts
#pragma once

#include <string>
#include <vector>

#include "schlice/gadget.hpp"
#include "schlice/parse.hpp"
#include "schlice/paths.hpp"
#include "schlice/quotient.hpp"
#include "schlice/slice.hpp"

namespace schlice {

struct Fixture {
  std::string name;
  std::string schema_text;
  std::string path_text;
  std::vector<std::string> vars;
  std::string label;  // empty when the fixture carries no criterion
};

inline const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = {
      {"fig1",
       "u := h();\n"
       "if p(w) {\n"
       "  v := f(u);\n"
       "} else {\n"
       "  v := g();\n"
       "}\n",
       "h p:T f", {"v"}, ""},
      {"fig3",
       "while p(w) {\n"
       "  w := g(w);\n"
       "  v := f(u);\n"
       "  if q(w, t) {\n"
       "    u := h(u);\n"
       "  }\n"
       "  t := H(t);\n"
       "}\n"
       "label end;\n",
       "p:T g f q:T h H p:T g f q:T h H p:F", {"v"}, "end"},
      {"fig3_noH",
       "while p(w) {\n"
       "  w := g(w);\n"
       "  v := f(u);\n"
       "  if q(w, t) {\n"
       "    u := h(u);\n"
       "  }\n"
       "}\n"
       "label end;\n",
       "", {}, ""},
      {"fig5",
       "while P(v) {\n"
       "  if Q(v) {\n"
       "    if q(v) {\n"
       "      x := g_good();\n"
       "      v := G_good(x, v);\n"
       "    } else {\n"
       "      x := g_bad();\n"
       "      v := G_bad(x, v);\n"
       "    }\n"
       "    if s1(v) {\n"
       "      x := g_1();\n"
       "    }\n"
       "    if s2(v) {\n"
       "      x := g_2();\n"
       "    }\n"
       "    if t(x) {\n"
       "      v := H(v);\n"
       "    }\n"
       "  }\n"
       "  v := J(v);\n"
       "}\n"
       "label end;\n",
       "P:T Q:T q:T g_good G_good s1:F s2:F t:T H J "
       "P:T Q:T q:T g_good G_good s1:T g_1 s2:F t:T H J "
       "P:T Q:T q:T g_good G_good s1:F s2:T g_2 t:T H J "
       "P:T Q:T q:F g_bad G_bad s1:T g_1 s2:T g_2 t:T H J "
       "P:T Q:F J "
       "P:F",
       {"v"}, "end"},
  };
  return all;
}

inline const Fixture& fixture(const std::string& name) {
  for (const Fixture& f : fixtures())
    if (f.name == name) return f;
  throw CriterionError("unknown fixture " + name);
}

// The n=1, m=1 gadget sample used as the fourth worked example.
inline GadgetInstance fig4_gadget() {
  Cnf3 cnf;
  cnf.num_vars = 1;
  cnf.clauses = {Clause{{Lit{1, false}, Lit{1, false}, Lit{1, false}}}};
  return generate_3sat_gadget(cnf);
}

struct CorpusResult {
  std::string name;
  bool pass;
  std::string detail;
};

// Runs every worked example against its expected verdicts.
inline std::vector<CorpusResult> run_corpus(TermStore& store) {
  std::vector<CorpusResult> results;
  auto record = [&results](const std::string& name, bool ok, std::string detail) {
    results.push_back(CorpusResult{name, ok, std::move(detail)});
  };

  {  // fig1: semantics of the two terminal paths
    ParsedSchema fig1 = parse_schema(fixture("fig1").schema_text);
    bool ok = fig1.linearity.ok && alphabet(fig1.schema).size() == 5;
    Path true_path = parse_path("h p:T f", fig1.schema);
    ok = ok && validate_path(fig1.schema, true_path).cls == PathClass::Terminal;
    ok = ok && store.to_string(final_term(store, fig1.schema, true_path, "v")) == "f(h())";
    ok = ok && store.to_string(final_term(store, fig1.schema, true_path, "u")) == "h()";
    ok = ok && store.to_string(final_term(store, fig1.schema, true_path, "w")) == "w";
    Path false_path = parse_path("h p:F g", fig1.schema);
    ok = ok && store.to_string(final_term(store, fig1.schema, false_path, "v")) == "g()";
    record("fig1", ok, "v = f(h()) on the true branch, g() on the false branch");
  }

  {  // fig3: the full schema is the only PFDS; dropping H still gives a DS
    const Fixture& fx = fixture("fig3");
    ParsedSchema fig3 = parse_schema(fx.schema_text);
    Path rho = parse_path(fx.path_text, fig3.schema);
    SliceCriterion crit = make_criterion(store, fig3.schema, rho, fx.vars, fx.label);
    ParsedSchema no_h = parse_schema(fixture("fig3_noH").schema_text);

    std::size_t accepted = 0;
    bool agree_on_all = true;
    for (const Quotient& q : all_quotients(crit.schema)) {
      if (!contains_label(q.schema, fx.label)) continue;
      SliceVerdict fast = check_pfds(store, crit, q.schema);
      SliceVerdict slow = check_pfds_definitional(store, crit, q.schema);
      agree_on_all = agree_on_all && fast.accepted == slow.accepted;
      if (fast.accepted) ++accepted;
    }
    bool pfds_unique = accepted == 1;

    SliceVerdict pfds_no_h = check_pfds(store, crit, no_h.schema);
    bool pfds_witness =
        !pfds_no_h.accepted &&
        pfds_no_h.kind == SliceVerdict::Reject::Consequence &&
        pfds_no_h.missing->to_string(store) == "q(g(g(w)),t)=T";

    SliceVerdict ds_no_h = check_ds(store, crit, no_h.schema);
    bool ds_ok = ds_no_h.accepted;
    bool saw_reduced = false;
    for (const auto& tau : ds_no_h.taus) {
      Path prefix(tau.tau.begin(),
                  tau.tau.begin() + static_cast<std::ptrdiff_t>(tau.prefix_len));
      if (print_path(prefix) == "p:T g f q:T h p:T g f q:F p:F" &&
          store.to_string(final_term(store, no_h.schema, prefix, "v")) == "f(h(u))")
        saw_reduced = true;
    }
    FindSlicesReport ds_search =
        find_slices(store, crit, {SliceMode::Ds, SliceWant::ExistsNonTrivial});
    bool ds_witness = ds_search.exists && ds_search.witness &&
                      ds_search.witness->retained_symbols == symbol_names(no_h.schema);
    record("fig3",
           pfds_unique && agree_on_all && pfds_witness && ds_ok && saw_reduced && ds_witness,
           "PFDS accepts only the schema itself; deleting t := H(t) is a DS");
  }

  {  // fig4: one-variable gadget round trip
    GadgetInstance g = fig4_gadget();
    bool ok = g.body_entries == 8;
    ok = ok && is_executable(store, g.schema, g.rho).executable;
    ok = ok && g.symbols.predicates().size() == 10;
    RoundTripReport rt = round_trip(store, g.cnf);
    ok = ok && rt.agree && rt.sat.satisfiable && rt.pfds_exists && rt.ds_exists &&
         rt.witness_checked;
    record("fig4", ok, "8 loop entries; satisfiable; non-trivial slices exist");
  }

  {  // fig5: two incomparable minimal slices
    const Fixture& fx = fixture("fig5");
    ParsedSchema fig5 = parse_schema(fx.schema_text);
    Path rho = parse_path(fx.path_text, fig5.schema);
    SliceCriterion crit = make_criterion(store, fig5.schema, rho, fx.vars, fx.label);

    auto drop_if = [&](const std::string& pred) {
      std::set<const Schema*> removed;
      visit(crit.schema, [&](const SchemaPtr& node) {
        if (node->kind() == NodeKind::If && node->name() == pred)
          removed.insert(node.get());
      });
      return delete_statements(crit.schema, removed);
    };
    SchemaPtr s1 = drop_if("s2");  // keeps s1, deletes the s2 conditional
    SchemaPtr s2 = drop_if("s1");
    std::set<const Schema*> both;
    visit(crit.schema, [&](const SchemaPtr& node) {
      if (node->kind() == NodeKind::If &&
          (node->name() == "s1" || node->name() == "s2"))
        both.insert(node.get());
    });
    SchemaPtr neither = delete_statements(crit.schema, both);

    bool ok = check_pfds(store, crit, s1).accepted;
    ok = ok && check_pfds(store, crit, s2).accepted;
    ok = ok && !check_pfds(store, crit, neither).accepted;
    ok = ok && !check_ds(store, crit, neither).accepted;
    FindSlicesReport minimal =
        find_slices(store, crit, {SliceMode::Pfds, SliceWant::AllMinimal});
    ok = ok && minimal.minimal.size() >= 2;
    bool has_s1 = false, has_s2 = false;
    for (const FoundSlice& f : minimal.minimal) {
      if (f.retained_symbols == symbol_names(s1)) has_s1 = true;
      if (f.retained_symbols == symbol_names(s2)) has_s2 = true;
    }
    ok = ok && has_s1 && has_s2;
    record("fig5", ok, "minimal slice antichain contains both one-sided deletions");
  }

  return results;
}

}  // namespace schlice
