// schlice :: quotient relation and exhaustive quotient enumeration
//
// A quotient of S is obtained by replacing zero or more statement subtrees
// of S by skip. Deletable statements are assignment, label, if and while
// nodes; branch and loop bodies are covered by deleting the statements
// inside them. A quotient is therefore an antichain of deleted statement
// nodes, which gives an exactly-once enumeration.
#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "schlice/schema.hpp"

namespace schlice {

namespace detail {

inline void subtree_sites(const SchemaPtr& node, std::vector<int>& out) {
  visit(node, [&out](const SchemaPtr& n) {
    if (!n->is_skip() && n->site() >= 0) out.push_back(n->site());
  });
}

// Canonical item list of a schema for sequence matching.
inline std::vector<SchemaPtr> seq_items(const SchemaPtr& node) {
  if (node->is_skip()) return {};
  if (node->kind() == NodeKind::Seq) return node->children();
  return {node};
}

}  // namespace detail

struct QuotientMatch {
  bool ok = false;
  std::vector<int> deleted_sites;  // sorted site ids from the original schema
};

namespace detail {

bool embeds(const SchemaPtr& part, const SchemaPtr& whole,
            std::vector<int>* deleted);

// Matches `sub` as a subsequence of `items`; unmatched items are deleted.
inline bool embed_lists(const std::vector<SchemaPtr>& sub,
                        const std::vector<SchemaPtr>& items,
                        std::vector<int>* deleted) {
  const size_t n = sub.size(), m = items.size();
  // feasible[i][j]: sub[i..] embeds into items[j..]
  std::vector<std::vector<char>> feasible(n + 1, std::vector<char>(m + 1, 0));
  for (size_t j = 0; j <= m; ++j) feasible[n][j] = 1;
  for (size_t i = n; i-- > 0;)
    for (size_t j = m; j-- > 0;)
      feasible[i][j] = (embeds(sub[i], items[j], nullptr) && feasible[i + 1][j + 1]) ||
                       feasible[i][j + 1];
  if (!feasible[0][0]) return false;
  if (deleted) {
    size_t i = 0, j = 0;
    while (j < m) {
      if (i < n && embeds(sub[i], items[j], nullptr) && feasible[i + 1][j + 1]) {
        embeds(sub[i], items[j], deleted);
        ++i;
      } else {
        subtree_sites(items[j], *deleted);
      }
      ++j;
    }
  }
  return true;
}

// Whether `part` is a quotient of `whole`; accumulates deleted sites of
// `whole` when a sink is given.
inline bool embeds(const SchemaPtr& part, const SchemaPtr& whole,
                   std::vector<int>* deleted) {
  if (part->is_skip()) {
    if (deleted) subtree_sites(whole, *deleted);
    return true;
  }
  if (part->kind() == NodeKind::Seq || whole->kind() == NodeKind::Seq)
    return embed_lists(seq_items(part), seq_items(whole), deleted);
  if (part->kind() != whole->kind() || part->name() != whole->name())
    return false;
  switch (part->kind()) {
    case NodeKind::Label:
      return true;
    case NodeKind::Assign:
      return part->target() == whole->target() && part->args() == whole->args();
    case NodeKind::If:
      if (part->args() != whole->args()) return false;
      if (!embeds(part->then_part(), whole->then_part(), nullptr) ||
          !embeds(part->else_part(), whole->else_part(), nullptr))
        return false;
      if (deleted) {
        embeds(part->then_part(), whole->then_part(), deleted);
        embeds(part->else_part(), whole->else_part(), deleted);
      }
      return true;
    case NodeKind::While:
      if (part->args() != whole->args()) return false;
      if (!embeds(part->body(), whole->body(), nullptr)) return false;
      if (deleted) embeds(part->body(), whole->body(), deleted);
      return true;
    default:
      return false;
  }
}

}  // namespace detail

// True iff `candidate` can be obtained from `original` by replacing zero or
// more statement subtrees by skip; reports the deleted site ids of one such
// replacement set.
inline QuotientMatch is_quotient(const SchemaPtr& candidate,
                                 const SchemaPtr& original) {
  QuotientMatch match;
  match.ok = detail::embeds(candidate, original, nullptr);
  if (match.ok) {
    detail::embeds(candidate, original, &match.deleted_sites);
    std::sort(match.deleted_sites.begin(), match.deleted_sites.end());
  }
  return match;
}

struct Quotient {
  SchemaPtr schema;
  std::vector<int> deleted_sites;  // sorted
  int retained_sites = 0;
};

// The quotient obtained by replacing the given statement nodes by skip;
// untouched subtrees are shared, so retained site ids stay stable.
inline SchemaPtr delete_statements(const SchemaPtr& node,
                                   const std::set<const Schema*>& removed) {
  if (removed.count(node.get())) return Schema::skip();
  if (node->children().empty()) return node;
  std::vector<SchemaPtr> children;
  children.reserve(node->children().size());
  bool changed = false;
  for (const auto& child : node->children()) {
    SchemaPtr rebuilt = delete_statements(child, removed);
    changed = changed || rebuilt.get() != child.get();
    children.push_back(std::move(rebuilt));
  }
  if (!changed) return node;
  return Schema::with_children(node, std::move(children));
}

// Enumerates every quotient of a linear schema exactly once, largest first
// (descending retained-site count), optionally forced to retain given sites.
class QuotientEnumerator {
 public:
  explicit QuotientEnumerator(SchemaPtr root, std::set<int> must_retain = {})
      : root_(std::move(root)), must_retain_(std::move(must_retain)) {
    total_sites_ = site_count(root_);
    collect(root_, -1);
    max_below_.assign(units_.size() + 1, 0);
    for (size_t i = units_.size(); i-- > 0;) {
      int keep = max_below_[i + 1];
      int del = units_[i].deletable
                    ? units_[i].weight + max_below_[units_[i].skip]
                    : -1;
      max_below_[i] = std::max(keep, del);
    }
  }

  // Largest deletable-site total reachable; used for search budgets.
  int deletable_site_total() const {
    return units_.empty() ? 0 : max_below_[0];
  }

  std::optional<Quotient> next() {
    while (batch_pos_ >= batch_.size()) {
      if (depth_ > deletable_site_total()) return std::nullopt;
      batch_.clear();
      batch_pos_ = 0;
      std::vector<int> chosen;
      fill_batch(0, depth_, chosen);
      ++depth_;
    }
    const std::vector<int>& units = batch_[batch_pos_++];
    Quotient q;
    q.deleted_sites.clear();
    std::set<const Schema*> removed;
    for (int u : units) {
      removed.insert(units_[u].node.get());
      detail::subtree_sites(units_[u].node, q.deleted_sites);
    }
    std::sort(q.deleted_sites.begin(), q.deleted_sites.end());
    q.retained_sites = total_sites_ - static_cast<int>(q.deleted_sites.size());
    q.schema = delete_statements(root_, removed);
    return q;
  }

 private:
  struct Unit {
    SchemaPtr node;
    int weight;       // non-skip sites in the subtree
    size_t skip;      // index of the first unit not under this one
    bool deletable;
  };

  void collect(const SchemaPtr& node, int parent) {
    bool is_unit = node->kind() == NodeKind::Assign ||
                   node->kind() == NodeKind::Label ||
                   node->kind() == NodeKind::If || node->kind() == NodeKind::While;
    size_t index = units_.size();
    if (is_unit) {
      bool protected_site = false;
      visit(node, [&](const SchemaPtr& n) {
        if (!n->is_skip() && must_retain_.count(n->site())) protected_site = true;
      });
      units_.push_back(Unit{node, site_count(node), 0, !protected_site});
    }
    for (const auto& child : node->children())
      collect(child, is_unit ? static_cast<int>(index) : parent);
    if (is_unit) units_[index].skip = units_.size();
  }

  void fill_batch(size_t i, int remaining, std::vector<int>& chosen) {
    if (remaining == 0 && i <= units_.size()) {
      // remaining choices are all "keep"
      batch_.push_back(chosen);
      return;
    }
    if (i >= units_.size() || remaining > max_below_[i]) return;
    // keep unit i, recurse into its descendants
    fill_batch(i + 1, remaining, chosen);
    // delete unit i, skip its descendants
    if (units_[i].deletable && units_[i].weight <= remaining) {
      chosen.push_back(static_cast<int>(i));
      fill_batch(units_[i].skip, remaining - units_[i].weight, chosen);
      chosen.pop_back();
    }
  }

  SchemaPtr root_;
  std::set<int> must_retain_;
  std::vector<Unit> units_;
  std::vector<int> max_below_;
  int total_sites_ = 0;
  int depth_ = 0;
  std::vector<std::vector<int>> batch_;
  size_t batch_pos_ = 0;
};

// Convenience collector for small schemas and tests.
inline std::vector<Quotient> all_quotients(const SchemaPtr& root,
                                           std::set<int> must_retain = {}) {
  QuotientEnumerator en(root, std::move(must_retain));
  std::vector<Quotient> out;
  while (auto q = en.next()) out.push_back(std::move(*q));
  return out;
}

}  // namespace schlice
