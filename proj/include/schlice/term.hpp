// schlice :: deduplicating term store
//
// Terms over function symbols and variables live in an append-only store
// that interns every node: structurally equal terms always receive the same
// id, so equality is id comparison and loop-generated terms of exponential
// tree size stay polynomial in memory through shared substructure.
#pragma once

#include <cstdint>
#include <deque>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace schlice {

using TermId = std::uint32_t;

class TermStore {
 public:
  struct Node {
    bool is_var;
    std::string name;            // variable name or function symbol
    std::vector<TermId> children;
  };

  TermId var(std::string_view name) { return intern(true, name, {}); }

  TermId app(std::string_view fn, std::vector<TermId> children) {
    return intern(false, fn, std::move(children));
  }

  // Node lookups are safe without the lock: the deque never invalidates
  // references and an id is only visible after its node is published.
  const Node& node(TermId id) const { return nodes_[id]; }
  bool is_var(TermId id) const { return nodes_[id].is_var; }
  const std::string& name(TermId id) const { return nodes_[id].name; }
  const std::vector<TermId>& children(TermId id) const { return nodes_[id].children; }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return nodes_.size();
  }

  // Fully parenthesized prefix form: variables bare, functions as f(...)
  // with nullary functions printed as f().
  std::string to_string(TermId id) const {
    const Node& n = node(id);
    if (n.is_var) return n.name;
    std::string out = n.name;
    out += '(';
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (i) out += ',';
      out += to_string(n.children[i]);
    }
    out += ')';
    return out;
  }

  // True iff the function symbol occurs anywhere in the term.
  bool mentions(TermId id, std::string_view fn) const {
    const Node& n = node(id);
    if (!n.is_var && n.name == fn) return true;
    for (TermId child : n.children)
      if (mentions(child, fn)) return true;
    return false;
  }

  // Function symbols occurring in the term.
  void function_symbols(TermId id, std::vector<std::string>& out) const {
    const Node& n = node(id);
    if (!n.is_var) out.push_back(n.name);
    for (TermId child : n.children) function_symbols(child, out);
  }

 private:
  struct Key {
    bool is_var;
    std::string name;
    std::vector<TermId> children;
  };
  // View key for allocation-free lookups on the hit path.
  struct KeyView {
    bool is_var;
    std::string_view name;
    const std::vector<TermId>* children;
  };
  struct KeyHash {
    using is_transparent = void;
    static std::size_t mix(bool is_var, std::string_view name,
                           const std::vector<TermId>& children) {
      std::size_t h = std::hash<std::string_view>{}(name) * 2 + (is_var ? 1 : 0);
      for (TermId c : children) h = h * 1000003u + c;
      return h;
    }
    std::size_t operator()(const Key& k) const { return mix(k.is_var, k.name, k.children); }
    std::size_t operator()(const KeyView& k) const {
      return mix(k.is_var, k.name, *k.children);
    }
  };
  struct KeyEq {
    using is_transparent = void;
    bool operator()(const Key& a, const Key& b) const {
      return a.is_var == b.is_var && a.name == b.name && a.children == b.children;
    }
    bool operator()(const KeyView& a, const Key& b) const {
      return a.is_var == b.is_var && a.name == b.name && *a.children == b.children;
    }
    bool operator()(const Key& a, const KeyView& b) const { return (*this)(b, a); }
  };

  TermId intern(bool is_var, std::string_view name, std::vector<TermId> children) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = index_.find(KeyView{is_var, name, &children});
    if (it != index_.end()) return it->second;
    TermId id = static_cast<TermId>(nodes_.size());
    nodes_.push_back(Node{is_var, std::string(name), children});
    index_.emplace(Key{is_var, std::string(name), std::move(children)}, id);
    return id;
  }

  mutable std::mutex mutex_;
  std::deque<Node> nodes_;
  std::unordered_map<Key, TermId, KeyHash, KeyEq> index_;
};

}  // namespace schlice
