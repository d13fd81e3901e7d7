// schlice :: walking paths through a schema
//
// A cursor tracks a position in the control structure of a schema. At every
// position the legal continuations are the empty set, one label letter, one
// assignment letter, or the true/false pair of one predicate, so paths can
// be validated, extended and enumerated without ever materializing the
// (generally infinite) path language.
#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "schlice/errors.hpp"
#include "schlice/herbrand.hpp"
#include "schlice/letter.hpp"
#include "schlice/schema.hpp"

namespace schlice {

class PathCursor {
 public:
  explicit PathCursor(SchemaPtr root) : root_(std::move(root)) {
    current_ = root_.get();
    normalize();
  }

  bool done() const { return current_ == nullptr; }

  // Construct to execute next (Label, Assign, If, or While); null when done.
  const Schema* at() const { return current_; }

  // Unchecked advances for generators that act on at() directly.
  void step() { finish(); }  // consume the current label or assignment letter
  void take_branch(bool br) {
    if (current_->kind() == NodeKind::If) {
      const Schema* node = current_;
      frames_.push_back(Frame{node, 0});
      enter(br ? node->then_part().get() : node->else_part().get());
    } else if (br) {
      frames_.push_back(Frame{current_, 0});
      enter(current_->body().get());
    } else {
      finish();
    }
  }

  // Legal next letters; empty iff the consumed word is terminal.
  std::vector<Letter> next_letters() const {
    if (!current_) return {};
    switch (current_->kind()) {
      case NodeKind::Label:
        return {Letter::label(current_->name())};
      case NodeKind::Assign:
        return {current_->assign_letter()};
      case NodeKind::If:
      case NodeKind::While:
        return {current_->pred_letter(true), current_->pred_letter(false)};
      default:
        return {};
    }
  }

  // Consumes one letter; false when the letter is not a legal continuation.
  bool advance(const Letter& letter) {
    if (!current_) return false;
    switch (current_->kind()) {
      case NodeKind::Label:
        if (letter != Letter::label(current_->name())) return false;
        finish();
        return true;
      case NodeKind::Assign:
        if (letter != current_->assign_letter()) return false;
        finish();
        return true;
      case NodeKind::If:
        if (letter == current_->pred_letter(true)) {
          frames_.push_back(Frame{current_, 0});
          enter(current_->then_part().get());
        } else if (letter == current_->pred_letter(false)) {
          frames_.push_back(Frame{current_, 0});
          enter(current_->else_part().get());
        } else {
          return false;
        }
        return true;
      case NodeKind::While:
        if (letter == current_->pred_letter(true)) {
          frames_.push_back(Frame{current_, 0});
          enter(current_->body().get());
        } else if (letter == current_->pred_letter(false)) {
          finish();
        } else {
          return false;
        }
        return true;
      default:
        return false;
    }
  }

 private:
  struct Frame {
    const Schema* node;  // Seq, If, or While
    std::size_t pos;     // Seq: child index in execution
  };

  void enter(const Schema* node) {
    current_ = node;
    normalize();
  }

  // Descend to the next letter-bearing construct, completing skips.
  void normalize() {
    while (current_) {
      if (current_->kind() == NodeKind::Seq) {
        frames_.push_back(Frame{current_, 0});
        current_ = current_->children()[0].get();
      } else if (current_->kind() == NodeKind::Skip) {
        finish();
        return;
      } else {
        return;
      }
    }
  }

  // The current construct completed; resume the enclosing context.
  void finish() {
    current_ = nullptr;
    while (!frames_.empty()) {
      Frame& top = frames_.back();
      if (top.node->kind() == NodeKind::Seq) {
        if (top.pos + 1 < top.node->children().size()) {
          ++top.pos;
          current_ = top.node->children()[top.pos].get();
          normalize();
          return;
        }
        frames_.pop_back();
      } else if (top.node->kind() == NodeKind::If) {
        frames_.pop_back();
      } else {  // While: body completed, back to the guard
        current_ = top.node;
        frames_.pop_back();
        return;
      }
    }
  }

  SchemaPtr root_;
  const Schema* current_;
  std::vector<Frame> frames_;
};

enum class PathClass { ValidPrefix, Terminal, Invalid };

struct PathValidation {
  PathClass cls;
  std::size_t invalid_pos = static_cast<std::size_t>(-1);
};

inline PathValidation validate_path(const SchemaPtr& schema, const Path& path) {
  PathCursor cursor(schema);
  for (std::size_t i = 0; i < path.size(); ++i)
    if (!cursor.advance(path[i])) return {PathClass::Invalid, i};
  return {cursor.done() ? PathClass::Terminal : PathClass::ValidPrefix, {}};
}

inline void require_valid_path(const SchemaPtr& schema, const Path& path,
                               const std::string& what) {
  PathValidation v = validate_path(schema, path);
  if (v.cls == PathClass::Invalid)
    throw PathError(what + ": letter " + std::to_string(v.invalid_pos) + " (" +
                    path[v.invalid_pos].token() + ") is not a legal continuation");
}

// Exact continuation set of a valid prefix; empty iff the prefix is terminal.
inline std::vector<Letter> next_letters(const SchemaPtr& schema, const Path& prefix) {
  PathCursor cursor(schema);
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (!cursor.advance(prefix[i]))
      throw PathError("next_letters: invalid prefix at letter " + std::to_string(i));
  return cursor.next_letters();
}

struct EnumeratedPath {
  Path path;
  bool terminal;
};

// All valid paths of length <= max_len in length-lexicographic order, the
// true branch explored before the false branch.
inline std::vector<EnumeratedPath> enumerate_paths(const SchemaPtr& schema,
                                                   std::size_t max_len) {
  std::vector<EnumeratedPath> out;
  struct Item {
    Path path;
    PathCursor cursor;
  };
  std::deque<Item> frontier;
  frontier.push_back(Item{{}, PathCursor(schema)});
  while (!frontier.empty()) {
    Item item = std::move(frontier.front());
    frontier.pop_front();
    out.push_back(EnumeratedPath{item.path, item.cursor.done()});
    if (item.path.size() == max_len) continue;
    for (const Letter& letter : item.cursor.next_letters()) {
      Item next = item;
      next.cursor.advance(letter);
      next.path.push_back(letter);
      frontier.push_back(std::move(next));
    }
  }
  return out;
}

// -- validated Herbrand operations ------------------------------------------

// Final term of `var` after running the path from the natural state.
inline TermId final_term(TermStore& store, const SchemaPtr& schema,
                         const Path& path, const std::string& var) {
  require_valid_path(schema, path, "final_term");
  HerbrandState state = run_predicate_free(store, path);
  return state.get(store, var);
}

// Consequences of a path through the schema, in path order.
inline std::vector<Consequence> consequences(TermStore& store,
                                             const SchemaPtr& schema,
                                             const Path& path) {
  require_valid_path(schema, path, "consequences");
  return consequences_of_word(store, path);
}

struct Executability {
  bool executable;
  std::optional<Consequence> clash;  // the branch fact whose negation was forced first
  std::size_t clash_pos = 0;         // index of the clashing predicate letter
};

// A legal path is executable iff its consequence set is consistent: Herbrand
// interpretations choose branch outcomes per predicate term independently,
// so the only obstruction is one predicate term forced both ways.
inline Executability is_executable(TermStore& store, const SchemaPtr& schema,
                                   const Path& path) {
  require_valid_path(schema, path, "is_executable");
  ConsequenceSet set;
  HerbrandState state;
  std::vector<TermId> args;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Letter& letter = path[i];
    if (letter.is_assign()) {
      args.clear();
      for (const std::string& v : letter.args) args.push_back(state.get(store, v));
      state.set(store, letter.target, store.app(letter.name, args));
    } else if (letter.is_pred()) {
      args.clear();
      for (const std::string& v : letter.args) args.push_back(state.get(store, v));
      Consequence c = Consequence::make(store, letter.name, args, letter.branch);
      if (!set.insert(c)) return {false, std::move(c), i};
    }
  }
  return {true, std::nullopt, 0};
}

// Two paths are compatible iff some shared Herbrand interpretation realizes
// both from the natural state, i.e. their joint consequence set is consistent.
inline bool are_compatible(TermStore& store, const SchemaPtr& schema_a,
                           const Path& path_a, const SchemaPtr& schema_b,
                           const Path& path_b) {
  require_valid_path(schema_a, path_a, "are_compatible");
  require_valid_path(schema_b, path_b, "are_compatible");
  ConsequenceSet set;
  for (const Consequence& c : consequences_of_word(store, path_a))
    if (!set.insert(c)) return false;
  for (const Consequence& c : consequences_of_word(store, path_b))
    if (!set.insert(c)) return false;
  return true;
}

}  // namespace schlice
