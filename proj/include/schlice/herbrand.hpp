// schlice :: symbolic execution over the Herbrand domain
//
// States map variables to terms, defaulting to the natural state e with
// e(v) = v. Running the assignment letters of a path from e yields the
// final terms of its predicate-free schema; each predicate letter then
// records a consequence p(t1,...,tk)=Z, the branch fact forced by the path.
#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "schlice/errors.hpp"
#include "schlice/letter.hpp"
#include "schlice/schema.hpp"
#include "schlice/term.hpp"

namespace schlice {

class HerbrandState {
 public:
  TermId get(TermStore& store, const std::string& var) const {
    auto it = map_.find(var);
    if (it != map_.end()) return it->second;
    return store.var(var);
  }

  void set(TermStore& store, const std::string& var, TermId term) {
    if (term == store.var(var))
      map_.erase(var);  // keep the natural-state entries implicit
    else
      map_[var] = term;
  }

  bool operator==(const HerbrandState& other) const { return map_ == other.map_; }

  const std::unordered_map<std::string, TermId>& bindings() const { return map_; }

 private:
  std::unordered_map<std::string, TermId> map_;
};

struct Consequence {
  std::string pred;
  std::vector<TermId> args;
  bool branch;
  TermId key;  // the predicate term p(t1,...,tk) interned in the store

  static Consequence make(TermStore& store, std::string pred,
                          std::vector<TermId> args, bool branch) {
    TermId key = store.app(pred, args);
    return Consequence{std::move(pred), std::move(args), branch, key};
  }

  bool operator==(const Consequence& other) const {
    return branch == other.branch && pred == other.pred && args == other.args;
  }

  std::string to_string(const TermStore& store) const {
    std::string out = pred;
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) out += ',';
      out += store.to_string(args[i]);
    }
    out += ')';
    out += branch ? "=T" : "=F";
    return out;
  }
};

// A set of branch facts, keyed by interned predicate term. Consistent while
// no predicate term is forced both ways; executability and compatibility
// both reduce to this.
class ConsequenceSet {
 public:
  // Returns false when the insertion clashes with the opposite branch.
  bool insert(const Consequence& c) {
    auto [it, fresh] = decided_.emplace(c.key, c.branch);
    if (!fresh) return it->second == c.branch;
    return true;
  }

  void erase(const Consequence& c) {
    auto it = decided_.find(c.key);
    if (it != decided_.end() && it->second == c.branch) decided_.erase(it);
  }

  bool contains(const Consequence& c) const {
    auto it = decided_.find(c.key);
    return it != decided_.end() && it->second == c.branch;
  }

  // The branch already forced for a predicate term, if any.
  std::optional<bool> decided(TermId key) const {
    auto it = decided_.find(key);
    if (it == decided_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const { return decided_.size(); }

 private:
  std::unordered_map<TermId, bool> decided_;
};

// Final state of the assignment letters of a word; predicate letters are
// discarded exactly as the word's predicate-free schema discards them and
// labels have no effect.
inline HerbrandState run_predicate_free(TermStore& store, const Path& word,
                                        HerbrandState start = {}) {
  HerbrandState state = std::move(start);
  std::vector<TermId> args;
  for (const Letter& letter : word) {
    if (!letter.is_assign()) continue;
    args.clear();
    for (const std::string& v : letter.args) args.push_back(state.get(store, v));
    state.set(store, letter.target, store.app(letter.name, args));
  }
  return state;
}

// Final state of a predicate-free schema (a canonical sequence of
// assignments and labels).
inline HerbrandState run_predicate_free(TermStore& store, const SchemaPtr& schema,
                                        HerbrandState start = {}) {
  HerbrandState state = std::move(start);
  visit(schema, [&](const SchemaPtr& node) {
    switch (node->kind()) {
      case NodeKind::If:
      case NodeKind::While:
        throw PathError("predicate-free execution given a predicate node " +
                        node->name());
      case NodeKind::Assign: {
        std::vector<TermId> args;
        for (const std::string& v : node->args()) args.push_back(state.get(store, v));
        state.set(store, node->target(), store.app(node->name(), args));
        break;
      }
      default:
        break;
    }
  });
  return state;
}

// Consequences of a word in order, each predicate term evaluated in the
// state reached from e by the preceding assignment letters.
inline std::vector<Consequence> consequences_of_word(TermStore& store,
                                                     const Path& word) {
  std::vector<Consequence> out;
  HerbrandState state;
  std::vector<TermId> args;
  for (const Letter& letter : word) {
    if (letter.is_assign()) {
      args.clear();
      for (const std::string& v : letter.args) args.push_back(state.get(store, v));
      state.set(store, letter.target, store.app(letter.name, args));
    } else if (letter.is_pred()) {
      args.clear();
      for (const std::string& v : letter.args) args.push_back(state.get(store, v));
      out.push_back(Consequence::make(store, letter.name, args, letter.branch));
    }
  }
  return out;
}

}  // namespace schlice
