// schlice :: symbol table for functions, predicates, variables and labels
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "schlice/errors.hpp"

namespace schlice {

// The four name spaces are pairwise disjoint and an arity is fixed the first
// time a function or predicate is seen.
class SymbolTable {
 public:
  void add_function(const std::string& name, int arity) {
    check_free(name, Space::Function);
    auto [it, fresh] = functions_.emplace(name, arity);
    if (!fresh && it->second != arity)
      throw SymbolError("function " + name + " used with arity " +
                        std::to_string(arity) + " but declared with " +
                        std::to_string(it->second));
  }

  void add_predicate(const std::string& name, int arity) {
    check_free(name, Space::Predicate);
    auto [it, fresh] = predicates_.emplace(name, arity);
    if (!fresh && it->second != arity)
      throw SymbolError("predicate " + name + " used with arity " +
                        std::to_string(arity) + " but declared with " +
                        std::to_string(it->second));
  }

  void add_variable(const std::string& name) {
    check_free(name, Space::Variable);
    variables_.insert(name);
  }

  void add_label(const std::string& name) {
    check_free(name, Space::Label);
    labels_.insert(name);
  }

  std::optional<int> function_arity(const std::string& name) const {
    auto it = functions_.find(name);
    if (it == functions_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<int> predicate_arity(const std::string& name) const {
    auto it = predicates_.find(name);
    if (it == predicates_.end()) return std::nullopt;
    return it->second;
  }

  bool has_variable(const std::string& name) const { return variables_.count(name) > 0; }
  bool has_label(const std::string& name) const { return labels_.count(name) > 0; }

  const std::map<std::string, int>& functions() const { return functions_; }
  const std::map<std::string, int>& predicates() const { return predicates_; }
  const std::set<std::string>& variables() const { return variables_; }
  const std::set<std::string>& labels() const { return labels_; }

 private:
  enum class Space { Function, Predicate, Variable, Label };

  void check_free(const std::string& name, Space space) {
    if (space != Space::Function && functions_.count(name))
      throw SymbolError(name + " already names a function");
    if (space != Space::Predicate && predicates_.count(name))
      throw SymbolError(name + " already names a predicate");
    if (space != Space::Variable && variables_.count(name))
      throw SymbolError(name + " already names a variable");
    if (space != Space::Label && labels_.count(name))
      throw SymbolError(name + " already names a label");
  }

  std::map<std::string, int> functions_;
  std::map<std::string, int> predicates_;
  std::set<std::string> variables_;
  std::set<std::string> labels_;
};

}  // namespace schlice
