// Shared test utilities: random generators and independent oracles.
#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "schlice/schlice.hpp"

namespace schlice::testing {

// -- random linear schemas ----------------------------------------------------

struct SchemaGenOptions {
  int max_nodes = 12;
  int max_arity = 2;
  bool end_label = false;  // append `label end;`
  int max_loop_depth = 2;
};

class SchemaGen {
 public:
  SchemaGen(std::mt19937& rng, SchemaGenOptions options = {})
      : rng_(rng), options_(options) {}

  SchemaPtr generate() {
    budget_ = 1 + pick(options_.max_nodes);
    std::vector<SchemaPtr> items = statements(0);
    if (options_.end_label) items.push_back(Schema::label("end"));
    return with_site_numbering(Schema::seq(std::move(items)));
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::string fresh(const char* stem, int& counter) {
    return std::string(stem) + std::to_string(++counter);
  }

  std::string variable() {
    static const std::array<const char*, 4> pool = {"w", "x", "y", "z"};
    return pool[static_cast<std::size_t>(pick(4))];
  }

  std::vector<std::string> arg_tuple() {
    std::vector<std::string> args;
    int arity = pick(options_.max_arity + 1);
    for (int i = 0; i < arity; ++i) args.push_back(variable());
    return args;
  }

  std::vector<SchemaPtr> statements(int loop_depth) {
    std::vector<SchemaPtr> items;
    while (budget_ > 0 && (items.empty() || pick(3) != 0)) {
      items.push_back(statement(loop_depth));
    }
    return items;
  }

  SchemaPtr statement(int loop_depth) {
    --budget_;
    int roll = pick(10);
    if (budget_ <= 0 || roll < 4)
      return Schema::assign(variable(), fresh("f", functions_), arg_tuple());
    if (roll < 5) return Schema::label(fresh("L", labels_));
    if (roll < 8 || loop_depth >= options_.max_loop_depth) {
      SchemaPtr then_part = statement(loop_depth);
      SchemaPtr else_part = pick(2) ? Schema::skip() : statement(loop_depth);
      return Schema::if_(fresh("p", predicates_), arg_tuple(), then_part, else_part);
    }
    return Schema::while_(fresh("p", predicates_), arg_tuple(), statement(loop_depth + 1));
  }

  std::mt19937& rng_;
  SchemaGenOptions options_;
  int budget_ = 0;
  int functions_ = 0;
  int predicates_ = 0;
  int labels_ = 0;
};

// A uniformly random valid path of length <= max_len (not necessarily
// executable or terminal).
inline Path random_path(std::mt19937& rng, const SchemaPtr& schema,
                        std::size_t max_len, bool stop_early = true) {
  PathCursor cursor(schema);
  Path path;
  while (path.size() < max_len) {
    std::vector<Letter> next = cursor.next_letters();
    if (next.empty()) break;
    if (stop_early && std::uniform_int_distribution<int>(0, 9)(rng) == 0) break;
    const Letter& letter =
        next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng)];
    cursor.advance(letter);
    path.push_back(letter);
  }
  return path;
}

// A random executable path: branch choices are recorded as consequences and
// replayed whenever the same predicate term comes around again, which is
// exactly evaluation under a random Herbrand interpretation.
inline Path random_executable_path(std::mt19937& rng, TermStore& store,
                                   const SchemaPtr& schema, std::size_t max_len,
                                   bool* terminal = nullptr) {
  PathCursor cursor(schema);
  HerbrandState state;
  ConsequenceSet decided;
  Path path;
  std::vector<TermId> args;
  while (path.size() < max_len && !cursor.done()) {
    const Schema* node = cursor.at();
    args.clear();
    for (const std::string& v : node->args()) args.push_back(state.get(store, v));
    if (node->kind() == NodeKind::Label) {
      path.push_back(Letter::label(node->name()));
      cursor.step();
    } else if (node->kind() == NodeKind::Assign) {
      state.set(store, node->target(), store.app(node->name(), args));
      path.push_back(node->assign_letter());
      cursor.step();
    } else {
      TermId key = store.app(node->name(), args);
      std::optional<bool> forced = decided.decided(key);
      bool branch = forced ? *forced
                           : std::uniform_int_distribution<int>(0, 1)(rng) == 0;
      if (!forced) decided.insert(Consequence{node->name(), args, branch, key});
      path.push_back(node->pred_letter(branch));
      cursor.take_branch(branch);
    }
  }
  if (terminal) *terminal = cursor.done();
  return path;
}

// -- independent oracles ------------------------------------------------------

// Structural-recursion count of the quotients of a linear schema.
inline long long count_quotients_oracle(const SchemaPtr& node) {
  switch (node->kind()) {
    case NodeKind::Skip:
      return 1;
    case NodeKind::Label:
    case NodeKind::Assign:
      return 2;
    case NodeKind::Seq: {
      long long product = 1;
      for (const auto& child : node->children())
        product *= count_quotients_oracle(child);
      return product;
    }
    case NodeKind::If:
      return count_quotients_oracle(node->then_part()) *
                 count_quotients_oracle(node->else_part()) +
             1;
    case NodeKind::While:
      return count_quotients_oracle(node->body()) + 1;
  }
  return 0;
}

// Breadth-first closure of single simple l-reductions; decides reachability
// independently of the greedy alignment.
inline bool bfs_reducible(const SchemaPtr& schema, const Path& from, const Path& to,
                          const std::optional<std::string>& l = std::nullopt,
                          std::size_t state_cap = 100000) {
  if (from == to) return true;
  std::set<std::string> seen{print_path(from)};
  std::deque<Path> frontier{from};
  while (!frontier.empty()) {
    Path current = std::move(frontier.front());
    frontier.pop_front();
    for (const ReductionStep& step : simple_l_reductions(schema, current, l)) {
      Path next = apply_reduction(current, step);
      if (next == to) return true;
      if (next.size() < to.size()) continue;  // reductions never lengthen
      std::string key = print_path(next);
      if (seen.count(key) || seen.size() >= state_cap) continue;
      seen.insert(key);
      frontier.push_back(std::move(next));
    }
  }
  return false;
}

// Second satisfiability route: recursive over variables, clauses scanned in
// reverse with early contradiction detection.
inline bool sat_by_splitting(const Cnf3& cnf) {
  std::vector<int> value(static_cast<std::size_t>(cnf.num_vars), -1);
  std::function<bool(int)> rec = [&](int var) -> bool {
    bool any_undecided_clause = false;
    for (std::size_t k = cnf.clauses.size(); k-- > 0;) {
      const Clause& clause = cnf.clauses[k];
      bool satisfied = false, undecided = false;
      for (const Lit& lit : clause.lits) {
        int v = value[static_cast<std::size_t>(lit.var - 1)];
        if (v == -1)
          undecided = true;
        else if ((v == 1) != lit.negated)
          satisfied = true;
      }
      if (satisfied) continue;
      if (!undecided) return false;  // clause already false
      any_undecided_clause = true;
    }
    if (!any_undecided_clause) return true;
    if (var >= cnf.num_vars) return false;
    for (int choice : {1, 0}) {
      value[static_cast<std::size_t>(var)] = choice;
      if (rec(var + 1)) return true;
    }
    value[static_cast<std::size_t>(var)] = -1;
    return false;
  };
  return rec(0);
}

// Every 3-CNF with n <= max_n and m <= max_m, up to literal-pattern
// symmetry: clause and literal order, duplicate clauses, variable renaming
// and per-variable polarity flips. Instances that do not use all n
// variables are representatives of a smaller family and are skipped.
inline std::vector<Cnf3> canonical_cnf_family(int max_n, int max_m) {
  std::vector<Cnf3> out;
  for (int n = 1; n <= max_n; ++n) {
    using Enc = std::array<int, 3>;  // literal = 2*(var-1) + negated
    std::vector<Enc> clauses;
    for (int a = 0; a < 2 * n; ++a)
      for (int b = a; b < 2 * n; ++b)
        for (int c = b; c < 2 * n; ++c) clauses.push_back({a, b, c});
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::vector<std::pair<std::vector<int>, int>> transforms;
    do {
      for (int flips = 0; flips < (1 << n); ++flips) transforms.emplace_back(perm, flips);
    } while (std::next_permutation(perm.begin(), perm.end()));
    auto normalize = [](std::vector<Enc> in) {
      for (Enc& c : in) std::sort(c.begin(), c.end());
      std::sort(in.begin(), in.end());
      in.erase(std::unique(in.begin(), in.end()), in.end());
      return in;
    };
    auto transformed = [&](const std::vector<Enc>& in, const std::vector<int>& pm,
                           int flips) {
      std::vector<Enc> img = in;
      for (Enc& cl : img)
        for (int& lit : cl) {
          int v = lit / 2, p = lit % 2;
          lit = 2 * pm[static_cast<std::size_t>(v)] + (p ^ ((flips >> v) & 1));
        }
      return normalize(img);
    };
    std::vector<int> chosen;
    std::function<void(int, int)> rec = [&](int start, int left) {
      if (!chosen.empty()) {
        std::vector<Enc> inst;
        for (int i : chosen) inst.push_back(clauses[static_cast<std::size_t>(i)]);
        inst = normalize(inst);
        if (inst.size() == chosen.size()) {
          std::set<int> vars;
          for (const Enc& cl : inst)
            for (int lit : cl) vars.insert(lit / 2);
          if (static_cast<int>(vars.size()) == n) {
            bool canonical = true;
            for (const auto& [pm, flips] : transforms)
              if (transformed(inst, pm, flips) < inst) {
                canonical = false;
                break;
              }
            if (canonical) {
              Cnf3 cnf;
              cnf.num_vars = n;
              for (const Enc& cl : inst)
                cnf.clauses.push_back(Clause{{Lit{cl[0] / 2 + 1, cl[0] % 2 != 0},
                                              Lit{cl[1] / 2 + 1, cl[1] % 2 != 0},
                                              Lit{cl[2] / 2 + 1, cl[2] % 2 != 0}}});
              out.push_back(std::move(cnf));
            }
          }
        }
      }
      if (left == 0) return;
      for (int i = start; i < static_cast<int>(clauses.size()); ++i) {
        chosen.push_back(i);
        rec(i + 1, left - 1);
        chosen.pop_back();
      }
    };
    rec(0, max_m);
  }
  return out;
}

inline Cnf3 random_cnf(std::mt19937& rng, int max_vars, int max_clauses) {
  Cnf3 cnf;
  cnf.num_vars = std::uniform_int_distribution<int>(1, max_vars)(rng);
  int m = std::uniform_int_distribution<int>(1, max_clauses)(rng);
  for (int k = 0; k < m; ++k) {
    Clause clause{};
    for (int i = 0; i < 3; ++i)
      clause.lits[static_cast<std::size_t>(i)] =
          Lit{std::uniform_int_distribution<int>(1, cnf.num_vars)(rng),
              std::uniform_int_distribution<int>(0, 1)(rng) == 1};
    cnf.clauses.push_back(clause);
  }
  return cnf;
}

}  // namespace schlice::testing
