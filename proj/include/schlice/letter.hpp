// schlice :: path alphabet letters and paths
#pragma once

#include <string>
#include <vector>

namespace schlice {

// One element of a schema's path alphabet: an assignment letter carrying the
// full statement, a predicate letter carrying the taken branch, or a label.
struct Letter {
  enum class Kind { Assign, Pred, Label };

  Kind kind;
  std::string name;               // function, predicate, or label name
  std::string target;             // assignment target (Assign only)
  std::vector<std::string> args;  // referenced variables (Assign, Pred)
  bool branch = true;             // taken branch (Pred only)

  static Letter assign(std::string target, std::string fn,
                       std::vector<std::string> args) {
    return Letter{Kind::Assign, std::move(fn), std::move(target),
                  std::move(args), true};
  }
  static Letter pred(std::string name, std::vector<std::string> args, bool br) {
    return Letter{Kind::Pred, std::move(name), {}, std::move(args), br};
  }
  static Letter label(std::string name) {
    return Letter{Kind::Label, std::move(name), {}, {}, true};
  }

  bool is_assign() const { return kind == Kind::Assign; }
  bool is_pred() const { return kind == Kind::Pred; }
  bool is_label() const { return kind == Kind::Label; }

  // Token form used by the `.path` file format: `f`, `p:T`, `p:F`, `@L`.
  std::string token() const {
    switch (kind) {
      case Kind::Assign: return name;
      case Kind::Pred: return name + (branch ? ":T" : ":F");
      case Kind::Label: return "@" + name;
    }
    return {};
  }

  friend bool operator==(const Letter& a, const Letter& b) {
    if (a.kind != b.kind || a.name != b.name) return false;
    switch (a.kind) {
      case Kind::Assign: return a.target == b.target && a.args == b.args;
      case Kind::Pred: return a.branch == b.branch && a.args == b.args;
      case Kind::Label: return true;
    }
    return false;
  }
  friend bool operator!=(const Letter& a, const Letter& b) { return !(a == b); }
};

using Path = std::vector<Letter>;

inline std::string print_path(const Path& path) {
  std::string out;
  for (const Letter& letter : path) {
    if (!out.empty()) out += ' ';
    out += letter.token();
  }
  return out;
}

}  // namespace schlice
