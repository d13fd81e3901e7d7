// schlice :: projection onto quotients and l-reductions of paths
//
// A simple l-reduction deletes one completed loop traversal that is
// immediately followed by the loop's exit letter, or flips an if letter
// whose taken branch completed and whose opposite arm is skip; reductions
// never touch a predicate whose body or arms contain the label l. Deciding
// whether one path reduces to another aligns the two words left to right:
// at the first difference both must hold the same predicate with opposite
// branches, and the applicable rewrite there is unique. For a while
// predicate the whole remaining run of iterations up to the exit letter is
// consumed (right to left, one simple reduction per iteration), since a
// single reduction can only ever delete the iteration adjacent to the exit.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "schlice/errors.hpp"
#include "schlice/paths.hpp"
#include "schlice/quotient.hpp"
#include "schlice/schema.hpp"

namespace schlice {

// Deletes from the path all letters whose symbol or label does not occur in
// the retained set.
inline Path project_letters(const std::set<std::string>& retained, const Path& path) {
  Path out;
  out.reserve(path.size());
  for (const Letter& letter : path)
    if (retained.count(letter.name)) out.push_back(letter);
  return out;
}

// Projection of a path of `schema` onto a quotient of it.
inline Path project(const SchemaPtr& schema, const SchemaPtr& quotient,
                    const Path& path) {
  if (!is_quotient(quotient, schema).ok)
    throw CriterionError("project: not a quotient of the given schema");
  require_valid_path(schema, path, "project");
  return project_letters(symbol_names(quotient), path);
}

enum class ReductionKind { WhileExit, IfFlip };

// One simple reduction, replayable at `pos` in the path it applies to.
struct ReductionStep {
  std::size_t pos;
  ReductionKind kind;
  Path removed;  // WhileExit: the guard letter and body traversal; IfFlip: the arm traversal
};

// One record per line: `pos=<i> kind=<while-exit|if-flip> removed=<letters>`.
inline std::string print_reduction_steps(const std::vector<ReductionStep>& steps) {
  std::string out;
  for (const ReductionStep& step : steps) {
    out += "pos=" + std::to_string(step.pos);
    out += step.kind == ReductionKind::WhileExit ? " kind=while-exit" : " kind=if-flip";
    out += " removed=" + print_path(step.removed) + "\n";
  }
  return out;
}

inline Path apply_reduction(const Path& path, const ReductionStep& step) {
  Path out(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(step.pos));
  if (step.kind == ReductionKind::WhileExit) {
    out.insert(out.end(), path.begin() + static_cast<std::ptrdiff_t>(step.pos + step.removed.size()),
               path.end());
  } else {
    Letter flipped = path[step.pos];
    flipped.branch = !flipped.branch;
    out.push_back(flipped);
    out.insert(out.end(),
               path.begin() + static_cast<std::ptrdiff_t>(step.pos + 1 + step.removed.size()),
               path.end());
  }
  return out;
}

namespace detail {

// Per-predicate structure needed by the reduction rules.
struct PredParts {
  bool is_while = false;
  SchemaPtr part[2];                 // [1] = true arm / loop body, [0] = false arm
  std::set<std::string> symbols[2];  // symbols and labels in each part
  bool is_skip[2] = {true, true};
  bool has_label = false;            // l occurs in the body / either arm
};

class ReductionContext {
 public:
  ReductionContext(const SchemaPtr& schema, const std::optional<std::string>& l) {
    visit(schema, [&](const SchemaPtr& node) {
      if (node->kind() == NodeKind::While) {
        PredParts parts;
        parts.is_while = true;
        parts.part[1] = node->body();
        parts.symbols[1] = symbol_names(node->body());
        parts.is_skip[1] = node->body()->is_skip();
        parts.has_label = l && contains_label(node->body(), *l);
        preds_.emplace(node->name(), std::move(parts));
      } else if (node->kind() == NodeKind::If) {
        PredParts parts;
        parts.part[1] = node->then_part();
        parts.part[0] = node->else_part();
        for (int b = 0; b < 2; ++b) {
          parts.symbols[b] = symbol_names(parts.part[b]);
          parts.is_skip[b] = parts.part[b]->is_skip();
        }
        parts.has_label = l && (contains_label(node->then_part(), *l) ||
                                contains_label(node->else_part(), *l));
        preds_.emplace(node->name(), std::move(parts));
      }
    });
  }

  const PredParts* find(const std::string& pred) const {
    auto it = preds_.find(pred);
    return it == preds_.end() ? nullptr : &it->second;
  }

 private:
  std::map<std::string, PredParts> preds_;
};

// End of the arm traversal that starts at `from`: the first position whose
// letter does not belong to the arm. Linearity makes the membership test by
// symbol name exact.
inline std::size_t arm_traversal_end(const Path& path, std::size_t from,
                                     const std::set<std::string>& arm_symbols) {
  std::size_t end = from;
  while (end < path.size() && arm_symbols.count(path[end].name)) ++end;
  return end;
}

inline std::size_t next_letter_of(const Path& path, std::size_t from,
                                  const std::string& pred) {
  for (std::size_t i = from; i < path.size(); ++i)
    if (path[i].is_pred() && path[i].name == pred) return i;
  return path.size();
}

}  // namespace detail

// All paths obtainable from `path` by one simple l-reduction, in position
// order. Passing no label runs the plain reduction variant.
inline std::vector<ReductionStep> simple_l_reductions(
    const SchemaPtr& schema, const Path& path,
    const std::optional<std::string>& l = std::nullopt) {
  if (!check_linear(schema).ok)
    throw PathError("reductions require a linear schema");
  require_valid_path(schema, path, "simple_l_reductions");
  detail::ReductionContext ctx(schema, l);
  std::vector<ReductionStep> steps;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Letter& letter = path[i];
    if (!letter.is_pred()) continue;
    const detail::PredParts* parts = ctx.find(letter.name);
    if (!parts || parts->has_label) continue;
    if (parts->is_while) {
      if (!letter.branch) continue;
      std::size_t k = detail::next_letter_of(path, i + 1, letter.name);
      if (k == path.size() || path[k].branch) continue;
      steps.push_back(ReductionStep{
          i, ReductionKind::WhileExit,
          Path(path.begin() + static_cast<std::ptrdiff_t>(i),
               path.begin() + static_cast<std::ptrdiff_t>(k))});
    } else {
      int taken = letter.branch ? 1 : 0;
      if (!parts->is_skip[1 - taken]) continue;
      std::size_t end = detail::arm_traversal_end(path, i + 1, parts->symbols[taken]);
      Path arm(path.begin() + static_cast<std::ptrdiff_t>(i + 1),
               path.begin() + static_cast<std::ptrdiff_t>(end));
      if (validate_path(parts->part[taken], arm).cls != PathClass::Terminal) continue;
      steps.push_back(ReductionStep{i, ReductionKind::IfFlip, std::move(arm)});
    }
  }
  return steps;
}

struct Reducibility {
  bool reducible = false;
  std::vector<ReductionStep> steps;  // replayable in order from the source path
};

namespace detail {

// Decision core over a prebuilt context; paths must already be known valid.
inline Reducibility reduce_decide(const ReductionContext& ctx, const Path& from,
                                  const Path& to) {
  Reducibility result;
  Path cur = from;
  std::size_t t = 0;
  while (true) {
    while (t < cur.size() && t < to.size() && cur[t] == to[t]) ++t;
    if (t == cur.size() && t == to.size()) {
      result.reducible = true;
      return result;
    }
    if (t == cur.size() || t == to.size()) return {};
    const Letter& a = cur[t];
    const Letter& b = to[t];
    if (!a.is_pred() || !b.is_pred() || a.name != b.name || a.branch == b.branch)
      return {};
    const PredParts* parts = ctx.find(a.name);
    if (!parts || parts->has_label) return {};
    if (parts->is_while) {
      if (!a.branch) return {};  // a run can only be cut down to its exit
      // Collect the guard positions of the remaining iterations and the exit.
      std::vector<std::size_t> guards{t};
      std::size_t exit_pos;
      for (std::size_t k = t;;) {
        std::size_t next = detail::next_letter_of(cur, k + 1, a.name);
        if (next == cur.size()) return {};  // path ends inside the run
        if (!cur[next].branch) {
          exit_pos = next;
          break;
        }
        guards.push_back(next);
        k = next;
      }
      // One simple reduction per iteration, innermost-to-the-exit first;
      // positions of earlier guards are unaffected by later removals.
      for (std::size_t j = guards.size(); j-- > 0;) {
        std::size_t seg_end = (j + 1 < guards.size()) ? guards[j + 1] : exit_pos;
        result.steps.push_back(ReductionStep{
            guards[j], ReductionKind::WhileExit,
            Path(cur.begin() + static_cast<std::ptrdiff_t>(guards[j]),
                 cur.begin() + static_cast<std::ptrdiff_t>(seg_end))});
      }
      cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(t),
                cur.begin() + static_cast<std::ptrdiff_t>(exit_pos));
    } else {
      int taken = a.branch ? 1 : 0;
      if (!parts->is_skip[1 - taken]) return {};
      std::size_t end = detail::arm_traversal_end(cur, t + 1, parts->symbols[taken]);
      Path arm(cur.begin() + static_cast<std::ptrdiff_t>(t + 1),
               cur.begin() + static_cast<std::ptrdiff_t>(end));
      if (validate_path(parts->part[taken], arm).cls != PathClass::Terminal)
        return {};
      result.steps.push_back(ReductionStep{t, ReductionKind::IfFlip, std::move(arm)});
      cur[t].branch = b.branch;
      cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(t + 1),
                cur.begin() + static_cast<std::ptrdiff_t>(end));
      ++t;
    }
  }
}

}  // namespace detail

// Decides whether `from` is l-reducible to `to` (zero or more simple
// l-reductions) and returns one witness sequence.
inline Reducibility is_l_reducible(const SchemaPtr& schema, const Path& from,
                                   const Path& to,
                                   const std::optional<std::string>& l = std::nullopt) {
  if (!check_linear(schema).ok)
    throw PathError("reductions require a linear schema");
  require_valid_path(schema, from, "is_l_reducible");
  require_valid_path(schema, to, "is_l_reducible");
  detail::ReductionContext ctx(schema, l);
  return detail::reduce_decide(ctx, from, to);
}

}  // namespace schlice
