// schlice :: structured schema syntax trees
//
// A schema is skip, a label, an assignment y := f(x1,...,xn), a sequence,
// a two-armed conditional, or a while loop. Trees are immutable and shared;
// sequences are kept in canonical form (no nested Seq, no Skip members, a
// lone Skip for the empty schema) so structurally equal schemas compare
// equal and quotient bookkeeping has one normal form per schema.
#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "schlice/errors.hpp"
#include "schlice/letter.hpp"
#include "schlice/symbols.hpp"

namespace schlice {

struct SourceSpan {
  int line = 0;
  int column = 0;
};

enum class NodeKind { Skip, Label, Assign, Seq, If, While };

class Schema;
using SchemaPtr = std::shared_ptr<const Schema>;

class Schema {
 public:
  // -- construction (always canonical) --------------------------------------

  static SchemaPtr skip() {
    static const SchemaPtr instance = std::make_shared<Schema>(Private{}, NodeKind::Skip);
    return instance;
  }

  static SchemaPtr label(std::string name, SourceSpan span = {}) {
    auto node = std::make_shared<Schema>(Private{}, NodeKind::Label);
    node->name_ = std::move(name);
    node->span_ = span;
    return node;
  }

  static SchemaPtr assign(std::string target, std::string fn,
                          std::vector<std::string> args, SourceSpan span = {}) {
    auto node = std::make_shared<Schema>(Private{}, NodeKind::Assign);
    node->target_ = std::move(target);
    node->name_ = std::move(fn);
    node->args_ = std::move(args);
    node->span_ = span;
    return node;
  }

  // Flattens nested sequences and drops skips; an empty sequence is skip and
  // a singleton is the element itself.
  static SchemaPtr seq(std::vector<SchemaPtr> items) {
    std::vector<SchemaPtr> flat;
    for (auto& item : items) {
      if (!item || item->kind_ == NodeKind::Skip) continue;
      if (item->kind_ == NodeKind::Seq)
        flat.insert(flat.end(), item->children_.begin(), item->children_.end());
      else
        flat.push_back(std::move(item));
    }
    if (flat.empty()) return skip();
    if (flat.size() == 1) return flat.front();
    auto node = std::make_shared<Schema>(Private{}, NodeKind::Seq);
    node->children_ = std::move(flat);
    return node;
  }

  static SchemaPtr if_(std::string pred, std::vector<std::string> args,
                       SchemaPtr then_part, SchemaPtr else_part,
                       SourceSpan span = {}) {
    auto node = std::make_shared<Schema>(Private{}, NodeKind::If);
    node->name_ = std::move(pred);
    node->args_ = std::move(args);
    node->children_ = {then_part ? std::move(then_part) : skip(),
                       else_part ? std::move(else_part) : skip()};
    node->span_ = span;
    return node;
  }

  static SchemaPtr while_(std::string pred, std::vector<std::string> args,
                          SchemaPtr body, SourceSpan span = {}) {
    auto node = std::make_shared<Schema>(Private{}, NodeKind::While);
    node->name_ = std::move(pred);
    node->args_ = std::move(args);
    node->children_ = {body ? std::move(body) : skip()};
    node->span_ = span;
    return node;
  }

  // -- accessors -------------------------------------------------------------

  NodeKind kind() const { return kind_; }
  bool is_skip() const { return kind_ == NodeKind::Skip; }
  int site() const { return site_; }
  SourceSpan span() const { return span_; }

  // Label name, assignment function, or if/while predicate.
  const std::string& name() const { return name_; }
  const std::string& target() const { return target_; }
  const std::vector<std::string>& args() const { return args_; }

  const std::vector<SchemaPtr>& children() const { return children_; }
  const SchemaPtr& then_part() const { assert(kind_ == NodeKind::If); return children_[0]; }
  const SchemaPtr& else_part() const { assert(kind_ == NodeKind::If); return children_[1]; }
  const SchemaPtr& body() const { assert(kind_ == NodeKind::While); return children_[0]; }

  Letter assign_letter() const {
    assert(kind_ == NodeKind::Assign);
    return Letter::assign(target_, name_, args_);
  }
  Letter pred_letter(bool branch) const {
    assert(kind_ == NodeKind::If || kind_ == NodeKind::While);
    return Letter::pred(name_, args_, branch);
  }

  // Copy of `node` with the given children; the copy keeps the node's site
  // id so quotient-taking leaves retained ids stable. Sequences are
  // re-canonicalized, which may collapse the node away entirely.
  static SchemaPtr with_children(const SchemaPtr& node,
                                 std::vector<SchemaPtr> children) {
    if (node->kind_ == NodeKind::Seq) {
      SchemaPtr collapsed = seq(std::move(children));
      if (collapsed->kind_ != NodeKind::Seq) return collapsed;
      auto clone = std::const_pointer_cast<Schema>(collapsed);
      clone->site_ = node->site_;
      return collapsed;
    }
    auto clone = std::make_shared<Schema>(Private{}, node->kind_);
    clone->site_ = node->site_;
    clone->name_ = node->name_;
    clone->target_ = node->target_;
    clone->args_ = node->args_;
    clone->span_ = node->span_;
    clone->children_ = std::move(children);
    return clone;
  }

  struct Private {};  // make_shared needs a public constructor
  explicit Schema(Private, NodeKind kind) : kind_(kind) {}

 private:
  friend SchemaPtr with_site_numbering(const SchemaPtr&);

  NodeKind kind_;
  int site_ = -1;
  std::string name_;
  std::string target_;
  std::vector<std::string> args_;
  std::vector<SchemaPtr> children_;
  SourceSpan span_;
};

// Structural equality; site ids and source spans do not participate.
inline bool equal(const SchemaPtr& a, const SchemaPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind() != b->kind() || a->name() != b->name() ||
      a->target() != b->target() || a->args() != b->args())
    return false;
  const auto& ca = a->children();
  const auto& cb = b->children();
  if (ca.size() != cb.size()) return false;
  for (size_t i = 0; i < ca.size(); ++i)
    if (!equal(ca[i], cb[i])) return false;
  return true;
}

// Rebuilds the tree with preorder site ids on every non-skip node. Quotients
// later share the retained subtrees, which is what keeps ids stable.
inline SchemaPtr with_site_numbering(const SchemaPtr& root) {
  int next = 0;
  auto rec = [&next](auto&& self, const SchemaPtr& node) -> SchemaPtr {
    if (node->is_skip()) return node;
    auto clone = std::make_shared<Schema>(Schema::Private{}, node->kind());
    clone->site_ = next++;
    clone->name_ = node->name_;
    clone->target_ = node->target_;
    clone->args_ = node->args_;
    clone->span_ = node->span_;
    clone->children_.reserve(node->children().size());
    for (const auto& child : node->children())
      clone->children_.push_back(self(self, child));
    return clone;
  };
  return rec(rec, root);
}

template <typename Fn>
void visit(const SchemaPtr& node, Fn&& fn) {
  fn(node);
  for (const auto& child : node->children()) visit(child, fn);
}

// Number of non-skip nodes.
inline int site_count(const SchemaPtr& root) {
  int n = 0;
  visit(root, [&n](const SchemaPtr& node) { if (!node->is_skip()) ++n; });
  return n;
}

// Registers every symbol occurring in the tree; throws SymbolError on
// cross-namespace clashes or inconsistent arities.
inline SymbolTable collect_symbols(const SchemaPtr& root) {
  SymbolTable table;
  visit(root, [&table](const SchemaPtr& node) {
    switch (node->kind()) {
      case NodeKind::Label:
        table.add_label(node->name());
        break;
      case NodeKind::Assign:
        table.add_function(node->name(), static_cast<int>(node->args().size()));
        table.add_variable(node->target());
        for (const auto& v : node->args()) table.add_variable(v);
        break;
      case NodeKind::If:
      case NodeKind::While:
        table.add_predicate(node->name(), static_cast<int>(node->args().size()));
        for (const auto& v : node->args()) table.add_variable(v);
        break;
      default:
        break;
    }
  });
  return table;
}

struct LinearityReport {
  bool ok = true;
  std::vector<std::string> repeated;  // sorted, deduplicated
};

// A schema is linear when no function symbol, predicate symbol, or label
// occurs more than once.
inline LinearityReport check_linear(const SchemaPtr& root) {
  std::map<std::string, int> seen;
  visit(root, [&seen](const SchemaPtr& node) {
    switch (node->kind()) {
      case NodeKind::Label:
      case NodeKind::Assign:
      case NodeKind::If:
      case NodeKind::While:
        ++seen[node->name()];
        break;
      default:
        break;
    }
  });
  LinearityReport report;
  for (const auto& [name, count] : seen)
    if (count > 1) report.repeated.push_back(name);
  report.ok = report.repeated.empty();
  return report;
}

// Function, predicate, and label names occurring in the tree.
inline std::set<std::string> symbol_names(const SchemaPtr& root) {
  std::set<std::string> names;
  visit(root, [&names](const SchemaPtr& node) {
    if (node->kind() == NodeKind::Label || node->kind() == NodeKind::Assign ||
        node->kind() == NodeKind::If || node->kind() == NodeKind::While)
      names.insert(node->name());
  });
  return names;
}

inline bool contains_label(const SchemaPtr& root, const std::string& label) {
  bool found = false;
  visit(root, [&](const SchemaPtr& node) {
    if (node->kind() == NodeKind::Label && node->name() == label) found = true;
  });
  return found;
}

// The alphabet of a linear schema: its assignment letters, both branch
// letters per predicate, and its label letters, in preorder.
inline std::vector<Letter> alphabet(const SchemaPtr& root) {
  LinearityReport linearity = check_linear(root);
  if (!linearity.ok) {
    std::string repeated;
    for (const auto& name : linearity.repeated) repeated += " " + name;
    throw SymbolError("alphabet requires a linear schema; repeated:" + repeated);
  }
  std::vector<Letter> letters;
  visit(root, [&letters](const SchemaPtr& node) {
    switch (node->kind()) {
      case NodeKind::Label:
        letters.push_back(Letter::label(node->name()));
        break;
      case NodeKind::Assign:
        letters.push_back(node->assign_letter());
        break;
      case NodeKind::If:
      case NodeKind::While:
        letters.push_back(node->pred_letter(true));
        letters.push_back(node->pred_letter(false));
        break;
      default:
        break;
    }
  });
  return letters;
}

}  // namespace schlice
