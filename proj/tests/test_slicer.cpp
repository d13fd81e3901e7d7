#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "schlice/schlice.hpp"

using namespace schlice;

namespace {

struct Fig3 {
  TermStore store;
  SliceCriterion crit;
  SchemaPtr no_h;
  Fig3() {
    ParsedSchema fig3 = parse_schema(fixture("fig3").schema_text);
    Path rho = parse_path(fixture("fig3").path_text, fig3.schema);
    crit = make_criterion(store, fig3.schema, rho, {"v"}, "end");
    no_h = parse_schema(fixture("fig3_noH").schema_text).schema;
  }
};

SchemaPtr drop_named_ifs(const SchemaPtr& root, const std::set<std::string>& preds) {
  std::set<const Schema*> removed;
  visit(root, [&](const SchemaPtr& node) {
    if (node->kind() == NodeKind::If && preds.count(node->name()))
      removed.insert(node.get());
  });
  return delete_statements(root, removed);
}

}  // namespace

TEST_CASE("criterion validation") {
  TermStore store;
  ParsedSchema fig3 = parse_schema(fixture("fig3").schema_text);
  Path rho = parse_path(fixture("fig3").path_text, fig3.schema);

  // missing label
  CHECK_THROWS_AS(make_criterion(store, fig3.schema, rho, {"v"}, "nolabel"),
                  CriterionError);

  // trailing label letter may be included; the two spellings agree
  Path rho_l = rho;
  rho_l.push_back(Letter::label("end"));
  SliceCriterion a = make_criterion(store, fig3.schema, rho, {"v"}, "end");
  SliceCriterion b = make_criterion(store, fig3.schema, rho_l, {"v"}, "end");
  CHECK(a.rho == b.rho);
  CHECK(a.rho_l == b.rho_l);

  // a non-executable criterion path is rejected
  ParsedSchema loop = parse_schema("while p(w) { skip; }\nlabel end;");
  Path bad = parse_path("p:T p:F", loop.schema);
  CHECK_THROWS_AS(make_criterion(store, loop.schema, bad, {"w"}, "end"),
                  CriterionError);

  // checkers reject non-quotients and label-free quotients
  SliceCriterion crit = make_criterion(store, fig3.schema, rho, {"v"}, "end");
  ParsedSchema stranger = parse_schema("v := other();\nlabel end;");
  CHECK_THROWS_AS(check_pfds(store, crit, stranger.schema), CriterionError);
  ParsedSchema label_free = parse_schema(fixture("fig3_noH").schema_text);
  SchemaPtr no_label = drop_named_ifs(label_free.schema, {});
  std::set<const Schema*> labels;
  visit(label_free.schema, [&](const SchemaPtr& n) {
    if (n->kind() == NodeKind::Label) labels.insert(n.get());
  });
  CHECK_THROWS_AS(check_pfds(store, crit, delete_statements(label_free.schema, labels)),
                  CriterionError);
}

TEST_CASE("the verifier on the loop example") {
  Fig3 fx;
  // the schema itself is always path-faithful
  CHECK(check_pfds(fx.store, fx.crit, fx.crit.schema).accepted);

  SliceVerdict no_h = check_pfds(fx.store, fx.crit, fx.no_h);
  CHECK_FALSE(no_h.accepted);
  CHECK(no_h.kind == SliceVerdict::Reject::Consequence);
  REQUIRE(no_h.missing.has_value());
  CHECK(no_h.missing->to_string(fx.store) == "q(g(g(w)),t)=T");
  CHECK(no_h.machine_line(fx.store) ==
        "REJECT kind=consequence detail=q(g(g(w)),t)=T");

  // deleting the f assignment instead fails on the final term
  std::set<const Schema*> removed;
  visit(fx.crit.schema, [&](const SchemaPtr& n) {
    if (n->kind() == NodeKind::Assign && n->name() == "f") removed.insert(n.get());
  });
  SliceVerdict no_f = check_pfds(fx.store, fx.crit, delete_statements(fx.crit.schema, removed));
  CHECK_FALSE(no_f.accepted);
  CHECK(no_f.kind == SliceVerdict::Reject::Mismatch);
  CHECK(no_f.var == "v");
  CHECK(fx.store.to_string(no_f.expected) == "f(h(u))");
  CHECK(fx.store.to_string(no_f.got) == "v");
}

TEST_CASE("compatible maximal paths") {
  Fig3 fx;
  // against the full schema everything is forced: the criterion path itself
  std::vector<std::pair<Path, bool>> full =
      compatible_maximal_paths(fx.store, fx.crit.schema, fx.crit, 14);
  REQUIRE(full.size() == 1);
  CHECK(print_path(full[0].first) ==
        "p:T g f q:T h H p:T g f q:T h H p:F @end");
  CHECK(full[0].second);

  // against the H-free quotient the second q is unforced: two paths
  std::vector<std::pair<Path, bool>> pair =
      compatible_maximal_paths(fx.store, fx.no_h, fx.crit, 12);
  REQUIRE(pair.size() == 2);
  CHECK(print_path(pair[0].first) == "p:T g f q:T h p:T g f q:T h p:F @end");
  CHECK(print_path(pair[1].first) == "p:T g f q:T h p:T g f q:F p:F @end");
  CHECK(pair[0].second);
  CHECK(pair[1].second);

  // a label-only quotient has the one-letter label path
  ParsedSchema label_only = parse_schema("label end;");
  std::vector<std::pair<Path, bool>> lone =
      compatible_maximal_paths(fx.store, label_only.schema, fx.crit, 12);
  REQUIRE(lone.size() == 1);
  CHECK(print_path(lone[0].first) == "@end");

  // with no forcing facts at all, the cap cuts the unbounded loop
  ParsedSchema free_loop = parse_schema("while r(z) { z := k(z); }\nlabel end;");
  ConsequenceSet no_facts;
  bool saw_cap = false;
  std::size_t yielded = 0;
  compatible_maximal_paths(fx.store, free_loop.schema, no_facts, 3,
                           [&](const Path& tau, bool terminal) {
                             ++yielded;
                             if (!terminal) {
                               saw_cap = true;
                               CHECK(tau.size() == 3);
                             }
                             return true;
                           });
  CHECK(saw_cap);
  CHECK(yielded == 3);  // r:F @end plus two capped three-letter prefixes
}

TEST_CASE("the dynamic slice checker on the loop example") {
  Fig3 fx;
  SliceVerdict ds = check_ds(fx.store, fx.crit, fx.no_h);
  CHECK(ds.accepted);
  REQUIRE(ds.taus.size() == 2);
  CHECK(ds.taus[0].prefix_len == 11);
  CHECK(ds.taus[0].steps.empty());
  CHECK(ds.taus[1].prefix_len == 10);
  REQUIRE(ds.taus[1].steps.size() == 1);
  Path reduced(ds.taus[1].tau.begin(), ds.taus[1].tau.begin() + 10);
  CHECK(print_path(reduced) == "p:T g f q:T h p:T g f q:F p:F");
  CHECK(fx.store.to_string(final_term(fx.store, fx.no_h, reduced, "v")) == "f(h(u))");

  // anything accepted by the verifier is accepted here (zero reductions)
  CHECK(check_ds(fx.store, fx.crit, fx.crit.schema).accepted);

  // deleting f loses the final term: mismatch witness
  std::set<const Schema*> removed;
  visit(fx.crit.schema, [&](const SchemaPtr& n) {
    if (n->kind() == NodeKind::Assign && n->name() == "f") removed.insert(n.get());
  });
  SliceVerdict no_f = check_ds(fx.store, fx.crit, delete_statements(fx.crit.schema, removed));
  CHECK_FALSE(no_f.accepted);
  CHECK(no_f.kind == SliceVerdict::Reject::Mismatch);
  CHECK(no_f.var == "v");
}

TEST_CASE("fast and definitional verifier agree on every loop-example quotient") {
  Fig3 fx;
  std::size_t accepted = 0;
  for (const Quotient& q : all_quotients(fx.crit.schema)) {
    if (!contains_label(q.schema, "end")) continue;
    SliceVerdict fast = check_pfds(fx.store, fx.crit, q.schema);
    SliceVerdict slow = check_pfds_definitional(fx.store, fx.crit, q.schema);
    REQUIRE(fast.accepted == slow.accepted);
    accepted += fast.accepted ? 1 : 0;
  }
  CHECK(accepted == 1);  // the schema itself is the only path-faithful slice
}

TEST_CASE("two incomparable minimal slices") {
  TermStore store;
  const Fixture& fx = fixture("fig5");
  ParsedSchema fig5 = parse_schema(fx.schema_text);
  Path rho = parse_path(fx.path_text, fig5.schema);
  SliceCriterion crit = make_criterion(store, fig5.schema, rho, {"v"}, "end");

  SchemaPtr s1 = drop_named_ifs(crit.schema, {"s2"});
  SchemaPtr s2 = drop_named_ifs(crit.schema, {"s1"});
  SchemaPtr neither = drop_named_ifs(crit.schema, {"s1", "s2"});

  CHECK(check_pfds(store, crit, s1).accepted);
  CHECK(check_pfds(store, crit, s2).accepted);
  SliceVerdict both_gone = check_pfds(store, crit, neither);
  CHECK_FALSE(both_gone.accepted);
  CHECK(both_gone.kind == SliceVerdict::Reject::Consequence);
  CHECK(both_gone.missing->to_string(store) == "t(g_bad())=T");
  CHECK_FALSE(check_ds(store, crit, neither).accepted);

  // deleting only the guarded assignment x := g_1() is also path-faithful,
  // but not minimal: deleting the whole s1 conditional is accepted too.
  std::set<const Schema*> removed;
  visit(crit.schema, [&](const SchemaPtr& n) {
    if (n->kind() == NodeKind::Assign && n->name() == "g_1") removed.insert(n.get());
  });
  CHECK(check_pfds(store, crit, delete_statements(crit.schema, removed)).accepted);

  FindSlicesReport minimal =
      find_slices(store, crit, {SliceMode::Pfds, SliceWant::AllMinimal});
  REQUIRE(minimal.minimal.size() == 2);
  CHECK(minimal.minimal[0].retained_symbols == symbol_names(s1));
  CHECK(minimal.minimal[1].retained_symbols == symbol_names(s2));

  // the same two are minimal dynamic slices as well
  FindSlicesReport ds_minimal =
      find_slices(store, crit, {SliceMode::Ds, SliceWant::AllMinimal});
  REQUIRE(ds_minimal.minimal.size() == 2);
  CHECK(ds_minimal.minimal[0].retained_symbols == symbol_names(s1));
}

TEST_CASE("existence searches on the loop example") {
  Fig3 fx;
  FindSlicesReport pfds =
      find_slices(fx.store, fx.crit, {SliceMode::Pfds, SliceWant::ExistsNonTrivial});
  CHECK_FALSE(pfds.exists);

  // with no proper slice, the minimal antichain is the schema itself
  FindSlicesReport minimal =
      find_slices(fx.store, fx.crit, {SliceMode::Pfds, SliceWant::AllMinimal});
  REQUIRE(minimal.minimal.size() == 1);
  CHECK(equal(minimal.minimal[0].schema, fx.crit.schema));
  CHECK_FALSE(minimal.exists);

  FindSlicesReport ds =
      find_slices(fx.store, fx.crit, {SliceMode::Ds, SliceWant::ExistsNonTrivial});
  CHECK(ds.exists);
  REQUIRE(ds.witness.has_value());
  CHECK(ds.witness->retained_symbols == symbol_names(fx.no_h));
}

TEST_CASE("search budget is enforced") {
  TermStore store;
  std::string text;
  for (int i = 0; i < 30; ++i)
    text += "v" + std::to_string(i) + " := f" + std::to_string(i) + "();\n";
  text += "label end;\n";
  ParsedSchema big = parse_schema(text);
  SliceCriterion crit = make_criterion(
      store, big.schema,
      parse_path(
          [&] {
            std::string tokens;
            for (int i = 0; i < 30; ++i) tokens += "f" + std::to_string(i) + " ";
            return tokens;
          }(),
          big.schema),
      {}, "end");
  FindSlicesOptions options;
  options.budget_sites = 24;
  CHECK_THROWS_AS(find_slices(store, crit, options), BudgetError);
  options.budget_sites = 64;
  CHECK_NOTHROW(find_slices(store, crit, options));
}

TEST_CASE("criteria with labels away from the end") {
  TermStore store;
  // a label in the middle of a straight-line schema
  ParsedSchema mid = parse_schema("a := f(); label mid; b := g(a);");
  SliceCriterion crit =
      make_criterion(store, mid.schema, parse_path("f", mid.schema), {"a"}, "mid");
  CHECK(check_pfds(store, crit, crit.schema).accepted);
  CHECK(check_ds(store, crit, crit.schema).accepted);
  // the statement after the label is irrelevant to the criterion
  std::set<const Schema*> tail;
  visit(crit.schema, [&](const SchemaPtr& n) {
    if (n->kind() == NodeKind::Assign && n->name() == "g") tail.insert(n.get());
  });
  SchemaPtr trimmed = delete_statements(crit.schema, tail);
  CHECK(check_pfds(store, crit, trimmed).accepted);
  CHECK(check_ds(store, crit, trimmed).accepted);
  // but the statement before it is not
  std::set<const Schema*> head;
  visit(crit.schema, [&](const SchemaPtr& n) {
    if (n->kind() == NodeKind::Assign && n->name() == "f") head.insert(n.get());
  });
  CHECK_FALSE(check_pfds(store, crit, delete_statements(crit.schema, head)).accepted);
  CHECK_FALSE(check_ds(store, crit, delete_statements(crit.schema, head)).accepted);

  // a label inside a loop body occurs many times along one path
  ParsedSchema loop = parse_schema("while p(w) { label L; w := g(w); }");
  Path two_visits = parse_path("p:T @L g p:T", loop.schema);
  SliceCriterion in_loop =
      make_criterion(store, loop.schema, two_visits, {"w"}, "L");
  CHECK(in_loop.rho_l.back() == Letter::label("L"));
  SliceVerdict self = check_ds(store, in_loop, in_loop.schema);
  CHECK(self.accepted);
  // the accepted prefix ends at the second label visit, not the first
  for (const auto& tau : self.taus)
    if (tau.ok) CHECK(tau.prefix_len == 4);
}

TEST_CASE("criterion variables may be absent from the schema") {
  TermStore store;
  ParsedSchema mid = parse_schema("a := f(); label end;");
  SliceCriterion crit = make_criterion(store, mid.schema, parse_path("f", mid.schema),
                                       {"zz"}, "end");
  CHECK(store.to_string(crit.final_term_of("zz")) == "zz");
  CHECK(check_pfds(store, crit, crit.schema).accepted);
}

TEST_CASE("non-linear schemas are rejected by criteria and reductions") {
  TermStore store;
  ParsedSchema dup = parse_schema("v := f(u); v := f(u); label end;");
  CHECK_THROWS_AS(make_criterion(store, dup.schema, Path{}, {"v"}, "end"),
                  CriterionError);
  SchemaPtr bare = Schema::seq(
      {Schema::assign("v", "f", {"u"}), Schema::assign("v", "f", {"u"})});
  CHECK_THROWS_AS(simple_l_reductions(bare, Path{}), PathError);
  CHECK_THROWS_AS(is_l_reducible(bare, Path{}, Path{}), PathError);
}

TEST_CASE("path-faithful slices are dynamic slices on random criteria") {
  std::mt19937 rng(13579);
  TermStore store;
  int checked = 0;
  for (int round = 0; round < 40 && checked < 400; ++round) {
    schlice::testing::SchemaGen gen(rng, {9, 2, true, 1});
    SchemaPtr s = gen.generate();
    if (schlice::testing::count_quotients_oracle(s) > 300) continue;
    bool terminal = false;
    Path rho = schlice::testing::random_executable_path(rng, store, s, 20, &terminal);
    if (!terminal || rho.empty()) continue;
    REQUIRE(rho.back() == Letter::label("end"));
    SliceCriterion crit;
    try {
      crit = make_criterion(store, s, rho, {"w", "x"}, "end");
    } catch (const CriterionError&) {
      continue;
    }
    for (const Quotient& q : all_quotients(crit.schema)) {
      if (!contains_label(q.schema, "end")) continue;
      if (check_pfds(store, crit, q.schema).accepted) {
        CHECK(check_ds(store, crit, q.schema).accepted);
        ++checked;
      }
    }
  }
  CHECK(checked > 50);
}
