// schlice :: dynamic slice checkers and slice search
//
// A slicing criterion is (rho l, V): an executable path rho followed by a
// label l, plus the variables whose final terms matter. A quotient S' of S
// containing l is
//   - a path-faithful dynamic slice (PFDS) iff every V-variable defines the
//     same term after proj(rho) as after rho and every consequence of
//     proj(rho) is a consequence of rho (polynomial check), equivalently iff
//     every maximal path through S' compatible with rho extends proj(rho)
//     (the definitional check, kept as an independent oracle);
//   - a dynamic slice (DS) iff every maximal path through S' compatible
//     with rho has a prefix rho'l where proj(rho) is l-reducible to rho'
//     and the V-terms after rho' match those after rho. Reductions never
//     lengthen a path, so maximal paths are enumerated to the exact cap
//     |proj(rho)l| and a cap-length path without such a prefix refutes all
//     of its extensions.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "schlice/errors.hpp"
#include "schlice/herbrand.hpp"
#include "schlice/parse.hpp"
#include "schlice/paths.hpp"
#include "schlice/quotient.hpp"
#include "schlice/reduce.hpp"
#include "schlice/schema.hpp"

namespace schlice {

struct SliceCriterion {
  SchemaPtr schema;
  Path rho;    // criterion path, label letter excluded
  Path rho_l;  // rho followed by the label letter
  std::string label;
  std::vector<std::string> vars;  // sorted

  // cached facts about rho, all against the store given to make_criterion
  ConsequenceSet rho_consequences;
  std::vector<Consequence> rho_consequence_list;
  std::vector<std::pair<std::string, TermId>> final_terms;  // per vars entry

  TermId final_term_of(const std::string& var) const {
    for (const auto& [v, t] : final_terms)
      if (v == var) return t;
    throw CriterionError("variable " + var + " is not part of the criterion");
  }
};

// Builds and validates a criterion. The path may be given either with or
// without its trailing label letter; when the label is the final statement
// of the schema this realizes the end-slice convention.
inline SliceCriterion make_criterion(TermStore& store, SchemaPtr schema, Path rho,
                                     std::vector<std::string> vars,
                                     const std::string& label) {
  SliceCriterion c;
  c.schema = std::move(schema);
  if (!c.schema->is_skip() && c.schema->site() < 0)
    c.schema = with_site_numbering(c.schema);
  if (!check_linear(c.schema).ok)
    throw CriterionError("slicing criteria require a linear schema");
  c.label = label;
  if (!contains_label(c.schema, label))
    throw CriterionError("label " + label + " does not occur in the schema");
  Letter label_letter = Letter::label(label);
  if (!rho.empty() && rho.back() == label_letter) rho.pop_back();
  c.rho = std::move(rho);
  c.rho_l = c.rho;
  c.rho_l.push_back(label_letter);
  if (validate_path(c.schema, c.rho_l).cls == PathClass::Invalid)
    throw CriterionError("criterion path followed by @" + label +
                         " is not a path through the schema");
  Executability exe = is_executable(store, c.schema, c.rho_l);
  if (!exe.executable)
    throw CriterionError("criterion path is not executable; " +
                         exe.clash->to_string(store) + " clashes");
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  c.vars = std::move(vars);
  c.rho_consequence_list = consequences_of_word(store, c.rho_l);
  for (const Consequence& q : c.rho_consequence_list) c.rho_consequences.insert(q);
  HerbrandState state = run_predicate_free(store, c.rho);
  for (const std::string& v : c.vars)
    c.final_terms.emplace_back(v, state.get(store, v));
  return c;
}

struct SliceVerdict {
  bool accepted = false;
  enum class Reject { None, Mismatch, Consequence, Path };
  Reject kind = Reject::None;

  // Mismatch: a criterion variable whose final term differs.
  std::string var;
  TermId expected = 0;  // after rho
  TermId got = 0;       // after the slice-side path
  // Consequence: a branch fact of proj(rho) that rho does not force.
  std::optional<Consequence> missing;
  std::size_t missing_pos = 0;  // index among proj(rho)'s predicate letters
  // Path: a compatible maximal path without the required prefix.
  Path failing_path;

  // DS bookkeeping: one record per enumerated compatible maximal path.
  struct TauRecord {
    Path tau;
    bool terminal;
    bool ok;
    std::size_t prefix_len = 0;        // length of the accepted rho' prefix
    std::vector<ReductionStep> steps;  // proj(rho) -> rho' witness
  };
  std::vector<TauRecord> taus;

  std::string machine_line(const TermStore& store) const {
    if (accepted) return "ACCEPT";
    switch (kind) {
      case Reject::Mismatch:
        return "REJECT kind=mismatch detail=" + var + " expected=" +
               store.to_string(expected) + " got=" + store.to_string(got);
      case Reject::Consequence:
        return "REJECT kind=consequence detail=" + missing->to_string(store);
      case Reject::Path:
        return "REJECT kind=path detail=" + print_path(failing_path);
      default:
        return "REJECT";
    }
  }
};

namespace detail {

inline std::set<std::string> ensure_slice_inputs(const SliceCriterion& c,
                                                 const SchemaPtr& quotient) {
  if (!is_quotient(quotient, c.schema).ok)
    throw CriterionError("candidate is not a quotient of the criterion schema");
  if (!contains_label(quotient, c.label))
    throw CriterionError("quotient does not contain the criterion label " + c.label);
  return symbol_names(quotient);
}

// Verifier core; `retained` must be the symbol set of a label-retaining
// quotient. Walks rho once, filtering to the projection on the fly.
inline SliceVerdict check_pfds_impl(TermStore& store, const SliceCriterion& c,
                                    const std::set<std::string>& retained) {
  SliceVerdict verdict;
  HerbrandState state;
  std::vector<TermId> args;
  std::size_t pred_index = 0;
  for (const Letter& letter : c.rho) {
    if (letter.is_label() || !retained.count(letter.name)) continue;
    args.clear();
    for (const std::string& v : letter.args) args.push_back(state.get(store, v));
    if (letter.is_assign()) {
      state.set(store, letter.target, store.app(letter.name, args));
      continue;
    }
    Consequence q = Consequence::make(store, letter.name, args, letter.branch);
    if (!c.rho_consequences.contains(q)) {
      verdict.kind = SliceVerdict::Reject::Consequence;
      verdict.missing = std::move(q);
      verdict.missing_pos = pred_index;
      return verdict;
    }
    ++pred_index;
  }
  for (const auto& [v, expected] : c.final_terms) {
    TermId got = state.get(store, v);
    if (got != expected) {
      verdict.kind = SliceVerdict::Reject::Mismatch;
      verdict.var = v;
      verdict.expected = expected;
      verdict.got = got;
      return verdict;
    }
  }
  verdict.accepted = true;
  return verdict;
}

}  // namespace detail

// Polynomial PFDS verifier: final V-terms agree and every consequence of
// proj(rho) is a consequence of rho.
inline SliceVerdict check_pfds(TermStore& store, const SliceCriterion& c,
                               const SchemaPtr& quotient) {
  std::set<std::string> retained = detail::ensure_slice_inputs(c, quotient);
  return detail::check_pfds_impl(store, c, retained);
}

// Depth-first enumeration of the maximal paths through `quotient` that are
// compatible with the criterion path: a predicate whose term the joint
// consequence set already decides is forced, anything else forks, and a
// path is yielded when terminal or when it reaches `cap` letters. The
// callback returns false to stop the enumeration.
template <typename Fn>
inline void compatible_maximal_paths(TermStore& store, const SchemaPtr& quotient,
                                     const ConsequenceSet& base, std::size_t cap,
                                     Fn&& fn) {
  struct Step {
    const Schema* node;
    bool branch;
  };
  std::vector<Step> trace;
  ConsequenceSet own;
  Path tau;  // materialized only at yield points
  auto yield = [&](bool terminal) -> bool {
    tau.clear();
    tau.reserve(trace.size());
    for (const Step& s : trace) {
      switch (s.node->kind()) {
        case NodeKind::Label: tau.push_back(Letter::label(s.node->name())); break;
        case NodeKind::Assign: tau.push_back(s.node->assign_letter()); break;
        default: tau.push_back(s.node->pred_letter(s.branch)); break;
      }
    }
    return fn(static_cast<const Path&>(tau), terminal);
  };
  auto rec = [&](auto&& self, PathCursor cursor, HerbrandState state) -> bool {
    const std::size_t mark = trace.size();
    bool keep_going = true;
    std::vector<TermId> args;
    while (true) {
      const Schema* node = cursor.at();
      if (!node) {
        keep_going = yield(true);
        break;
      }
      if (trace.size() >= cap) {
        keep_going = yield(false);
        break;
      }
      if (node->kind() == NodeKind::Label) {
        trace.push_back(Step{node, true});
        cursor.step();
        continue;
      }
      args.clear();
      for (const std::string& v : node->args()) args.push_back(state.get(store, v));
      if (node->kind() == NodeKind::Assign) {
        state.set(store, node->target(), store.app(node->name(), args));
        trace.push_back(Step{node, true});
        cursor.step();
        continue;
      }
      // predicate: forced when the joint consequence set decides its term
      TermId key = store.app(node->name(), args);
      std::optional<bool> forced = base.decided(key);
      if (!forced) forced = own.decided(key);
      if (forced) {
        trace.push_back(Step{node, *forced});
        cursor.take_branch(*forced);
        continue;
      }
      for (bool branch : {true, false}) {
        Consequence q{node->name(), args, branch, key};
        own.insert(q);
        PathCursor forked = cursor;
        forked.take_branch(branch);
        trace.push_back(Step{node, branch});
        keep_going = self(self, std::move(forked), state);
        trace.pop_back();
        own.erase(q);
        if (!keep_going) break;
      }
      break;
    }
    trace.resize(mark);
    return keep_going;
  };
  rec(rec, PathCursor(quotient), HerbrandState{});
}

inline std::vector<std::pair<Path, bool>> compatible_maximal_paths(
    TermStore& store, const SchemaPtr& quotient, const SliceCriterion& c,
    std::size_t cap) {
  detail::ensure_slice_inputs(c, quotient);
  std::vector<std::pair<Path, bool>> out;
  compatible_maximal_paths(store, quotient, c.rho_consequences, cap,
                           [&out](const Path& tau, bool terminal) {
                             out.emplace_back(tau, terminal);
                             return true;
                           });
  return out;
}

// Definitional PFDS check, used as the oracle against check_pfds: condition
// (1) on final terms plus "every maximal compatible path extends proj(rho)".
inline SliceVerdict check_pfds_definitional(TermStore& store, const SliceCriterion& c,
                                            const SchemaPtr& quotient,
                                            std::size_t cap = 0) {
  std::set<std::string> retained = detail::ensure_slice_inputs(c, quotient);
  Path proj = project_letters(retained, c.rho);
  if (cap == 0) cap = proj.size() + 1;
  if (cap < proj.size() + 1)
    throw CriterionError("definitional check needs cap >= |proj(rho) l|");
  SliceVerdict verdict;
  HerbrandState proj_state = run_predicate_free(store, proj);
  for (const auto& [v, expected] : c.final_terms) {
    TermId got = proj_state.get(store, v);
    if (got != expected) {
      verdict.kind = SliceVerdict::Reject::Mismatch;
      verdict.var = v;
      verdict.expected = expected;
      verdict.got = got;
      return verdict;
    }
  }
  bool all_extend = true;
  compatible_maximal_paths(
      store, quotient, c.rho_consequences, cap, [&](const Path& tau, bool) {
        bool extends = tau.size() >= proj.size() &&
                       std::equal(proj.begin(), proj.end(), tau.begin());
        if (!extends) {
          all_extend = false;
          verdict.kind = SliceVerdict::Reject::Path;
          verdict.failing_path = tau;
        }
        return extends;
      });
  verdict.accepted = all_extend;
  if (all_extend) verdict.kind = SliceVerdict::Reject::None;
  return verdict;
}

namespace detail {

inline SliceVerdict check_ds_impl(TermStore& store, const SliceCriterion& c,
                                  const SchemaPtr& quotient,
                                  const std::set<std::string>& retained,
                                  bool keep_records = true) {
  Path proj = project_letters(retained, c.rho);
  const std::size_t cap = proj.size() + 1;
  const Letter label_letter = Letter::label(c.label);
  const ReductionContext rctx(quotient, c.label);
  SliceVerdict verdict;
  verdict.accepted = true;

  compatible_maximal_paths(store, quotient, c.rho_consequences, cap, [&](const Path& tau,
                                                                         bool terminal) {
    SliceVerdict::TauRecord record;
    if (keep_records) record.tau = tau;
    record.terminal = terminal;
    record.ok = false;
    bool saw_term_mismatch = false;
    std::string mismatch_var;
    TermId mismatch_expected = 0, mismatch_got = 0;

    HerbrandState state;
    std::vector<TermId> args;
    for (std::size_t k = 0; k <= tau.size() && !record.ok; ++k) {
      if (k < tau.size() && tau[k].is_assign()) {
        args.clear();
        for (const std::string& v : tau[k].args) args.push_back(state.get(store, v));
        state.set(store, tau[k].target, store.app(tau[k].name, args));
      }
      if (k == tau.size() || !(tau[k] == label_letter)) continue;
      // candidate prefix rho' = tau[0..k)
      bool terms_match = true;
      for (const auto& [v, expected] : c.final_terms) {
        TermId got = state.get(store, v);
        if (got != expected) {
          terms_match = false;
          saw_term_mismatch = true;
          mismatch_var = v;
          mismatch_expected = expected;
          mismatch_got = got;
          break;
        }
      }
      Path prefix(tau.begin(), tau.begin() + static_cast<std::ptrdiff_t>(k));
      Reducibility red = reduce_decide(rctx, proj, prefix);
      if (red.reducible && terms_match) {
        record.ok = true;
        record.prefix_len = k;
        record.steps = std::move(red.steps);
      }
    }
    if (!record.ok) {
      verdict.accepted = false;
      if (saw_term_mismatch) {
        verdict.kind = SliceVerdict::Reject::Mismatch;
        verdict.var = mismatch_var;
        verdict.expected = mismatch_expected;
        verdict.got = mismatch_got;
      } else {
        verdict.kind = SliceVerdict::Reject::Path;
      }
      if (keep_records) verdict.failing_path = tau;
    }
    if (keep_records) verdict.taus.push_back(std::move(record));
    return verdict.accepted;
  });
  return verdict;
}

}  // namespace detail

// Bounded-path DS check per the co-NP membership argument: every compatible
// maximal path (cap |proj(rho)l|) must contain a labeled prefix rho'l with
// proj(rho) l-reducible to rho' and matching V-terms.
inline SliceVerdict check_ds(TermStore& store, const SliceCriterion& c,
                             const SchemaPtr& quotient) {
  std::set<std::string> retained = detail::ensure_slice_inputs(c, quotient);
  return detail::check_ds_impl(store, c, quotient, retained);
}

// -- slice search -------------------------------------------------------------

enum class SliceMode { Pfds, Ds };
enum class SliceWant { ExistsNonTrivial, AllMinimal };

struct FindSlicesOptions {
  SliceMode mode = SliceMode::Pfds;
  SliceWant want = SliceWant::ExistsNonTrivial;
  int budget_sites = 24;  // deletable-site limit for the lattice search
};

struct FoundSlice {
  SchemaPtr schema;
  std::vector<int> deleted_sites;
  std::set<std::string> retained_symbols;
};

struct FindSlicesReport {
  bool exists = false;
  std::optional<FoundSlice> witness;
  std::vector<FoundSlice> minimal;
  std::size_t quotients_checked = 0;
};

namespace detail {

// Sites that every accepted quotient must retain: the criterion label and,
// since a slice must rebuild the exact final V-terms out of its own
// assignments, the assignment of every function symbol occurring in them.
inline std::set<int> required_sites(TermStore& store, const SliceCriterion& c) {
  std::set<std::string> required_functions;
  std::vector<std::string> fns;
  for (const auto& [v, term] : c.final_terms) {
    fns.clear();
    store.function_symbols(term, fns);
    required_functions.insert(fns.begin(), fns.end());
  }
  std::set<int> sites;
  visit(c.schema, [&](const SchemaPtr& node) {
    if (node->kind() == NodeKind::Label && node->name() == c.label)
      sites.insert(node->site());
    if (node->kind() == NodeKind::Assign && required_functions.count(node->name()))
      sites.insert(node->site());
  });
  return sites;
}

}  // namespace detail

// Exhaustive lattice search over the quotients retaining the criterion label,
// largest first. Existence stops at the first accepted non-trivial quotient;
// the antichain of minimal accepted quotients is ordered by retained symbol
// sets.
inline FindSlicesReport find_slices(TermStore& store, const SliceCriterion& c,
                                    const FindSlicesOptions& options = {}) {
  FindSlicesReport report;
  QuotientEnumerator en(c.schema, detail::required_sites(store, c));
  if (en.deletable_site_total() > options.budget_sites)
    throw BudgetError("lattice search over " +
                      std::to_string(en.deletable_site_total()) +
                      " deletable sites exceeds the budget of " +
                      std::to_string(options.budget_sites));
  std::vector<FoundSlice> accepted;
  while (auto q = en.next()) {
    std::set<std::string> retained = symbol_names(q->schema);
    SliceVerdict verdict =
        options.mode == SliceMode::Pfds
            ? detail::check_pfds_impl(store, c, retained)
            : detail::check_ds_impl(store, c, q->schema, retained,
                                    /*keep_records=*/false);
    ++report.quotients_checked;
    if (!verdict.accepted) continue;
    FoundSlice found{q->schema, q->deleted_sites, std::move(retained)};
    if (options.want == SliceWant::ExistsNonTrivial) {
      if (!q->deleted_sites.empty()) {
        report.exists = true;
        report.witness = std::move(found);
        return report;
      }
    } else {
      accepted.push_back(std::move(found));
    }
  }
  if (options.want == SliceWant::AllMinimal) {
    for (const FoundSlice& a : accepted) {
      bool minimal = true;
      for (const FoundSlice& b : accepted) {
        if (&a == &b) continue;
        if (b.retained_symbols != a.retained_symbols &&
            std::includes(a.retained_symbols.begin(), a.retained_symbols.end(),
                          b.retained_symbols.begin(), b.retained_symbols.end())) {
          minimal = false;
          break;
        }
      }
      if (minimal) report.minimal.push_back(a);
    }
    std::sort(report.minimal.begin(), report.minimal.end(),
              [](const FoundSlice& x, const FoundSlice& y) {
                return x.retained_symbols < y.retained_symbols;
              });
    report.exists = std::any_of(report.minimal.begin(), report.minimal.end(),
                                [](const FoundSlice& f) {
                                  return !f.deleted_sites.empty();
                                });
  }
  return report;
}

}  // namespace schlice
