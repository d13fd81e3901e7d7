// schlice :: concrete syntax for schemas and paths
//
// Grammar:  skip;  |  label L;  |  v := f(x1,...,xn);  |
//           if p(x...) { ... } else { ... }  (else optional, defaults to skip)
//           |  while p(x...) { ... }   Juxtaposition is sequencing.
// `#` starts a line comment. Identifiers are ASCII letters, digits, `_` and
// `'` (primes), starting with a letter or `_`. Paths are whitespace-
// separated tokens `f`, `p:T`, `p:F`, `@L` resolved against the alphabet of
// a companion schema.
#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "schlice/errors.hpp"
#include "schlice/letter.hpp"
#include "schlice/schema.hpp"
#include "schlice/symbols.hpp"

namespace schlice {

struct ParsedSchema {
  SchemaPtr schema;      // site-numbered
  SymbolTable symbols;
  LinearityReport linearity;  // duplicate symbols are a warning, not an error
};

namespace detail {

struct Token {
  enum class Kind { Ident, Assign, Semi, LParen, RParen, LBrace, RBrace, Comma, End };
  Kind kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    int line = line_, column = column_;
    if (pos_ >= src_.size()) return {Token::Kind::End, "", line, column};
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string text;
      while (pos_ < src_.size()) {
        char d = src_[pos_];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'') {
          text += d;
          bump();
        } else {
          break;
        }
      }
      return {Token::Kind::Ident, std::move(text), line, column};
    }
    switch (c) {
      case ';': bump(); return {Token::Kind::Semi, ";", line, column};
      case '(': bump(); return {Token::Kind::LParen, "(", line, column};
      case ')': bump(); return {Token::Kind::RParen, ")", line, column};
      case '{': bump(); return {Token::Kind::LBrace, "{", line, column};
      case '}': bump(); return {Token::Kind::RBrace, "}", line, column};
      case ',': bump(); return {Token::Kind::Comma, ",", line, column};
      case ':':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
          bump();
          bump();
          return {Token::Kind::Assign, ":=", line, column};
        }
        throw ParseError("stray ':'", line, column);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, column);
    }
  }

 private:
  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class SchemaParser {
 public:
  explicit SchemaParser(std::string_view src) : lexer_(src) { shift(); }

  ParsedSchema parse() {
    SchemaPtr body = parse_sequence(/*stop_at_rbrace=*/false);
    expect(Token::Kind::End, "end of input");
    ParsedSchema out;
    out.schema = with_site_numbering(body);
    out.symbols = symbols_;
    out.linearity = check_linear(out.schema);
    return out;
  }

 private:
  using Kind = Token::Kind;

  SchemaPtr parse_sequence(bool stop_at_rbrace) {
    std::vector<SchemaPtr> items;
    while (true) {
      if (tok_.kind == Kind::End) break;
      if (tok_.kind == Kind::RBrace && stop_at_rbrace) break;
      items.push_back(parse_statement());
    }
    return Schema::seq(std::move(items));
  }

  SchemaPtr parse_statement() {
    if (tok_.kind != Kind::Ident)
      throw ParseError("expected a statement, got '" + tok_.text + "'", tok_.line,
                       tok_.column);
    SourceSpan span{tok_.line, tok_.column};
    std::string word = tok_.text;
    if (word == "skip") {
      shift();
      expect(Kind::Semi, "';' after skip");
      return Schema::skip();
    }
    if (word == "label") {
      shift();
      std::string name = expect_ident("label name");
      expect(Kind::Semi, "';' after label");
      symbols_.add_label(name);
      return Schema::label(name, span);
    }
    if (word == "if") {
      shift();
      auto [pred, args] = parse_call();
      symbols_.add_predicate(pred, static_cast<int>(args.size()));
      for (const auto& v : args) symbols_.add_variable(v);
      SchemaPtr then_part = parse_block();
      SchemaPtr else_part = Schema::skip();
      if (tok_.kind == Kind::Ident && tok_.text == "else") {
        shift();
        else_part = parse_block();
      }
      return Schema::if_(pred, args, then_part, else_part, span);
    }
    if (word == "while") {
      shift();
      auto [pred, args] = parse_call();
      symbols_.add_predicate(pred, static_cast<int>(args.size()));
      for (const auto& v : args) symbols_.add_variable(v);
      SchemaPtr body = parse_block();
      return Schema::while_(pred, args, body, span);
    }
    // assignment: v := f(args);
    std::string target = word;
    shift();
    expect(Kind::Assign, "':=' in assignment");
    auto [fn, args] = parse_call();
    expect(Kind::Semi, "';' after assignment");
    symbols_.add_variable(target);
    symbols_.add_function(fn, static_cast<int>(args.size()));
    for (const auto& v : args) symbols_.add_variable(v);
    return Schema::assign(target, fn, args, span);
  }

  SchemaPtr parse_block() {
    expect(Kind::LBrace, "'{'");
    SchemaPtr body = parse_sequence(/*stop_at_rbrace=*/true);
    expect(Kind::RBrace, "'}'");
    return body;
  }

  std::pair<std::string, std::vector<std::string>> parse_call() {
    std::string name = expect_ident("symbol name");
    expect(Kind::LParen, "'('");
    std::vector<std::string> args;
    if (tok_.kind != Kind::RParen) {
      args.push_back(expect_ident("argument variable"));
      while (tok_.kind == Kind::Comma) {
        shift();
        args.push_back(expect_ident("argument variable"));
      }
    }
    expect(Kind::RParen, "')'");
    return {std::move(name), std::move(args)};
  }

  std::string expect_ident(const char* what) {
    if (tok_.kind != Kind::Ident)
      throw ParseError(std::string("expected ") + what + ", got '" + tok_.text + "'",
                       tok_.line, tok_.column);
    std::string text = tok_.text;
    shift();
    return text;
  }

  void expect(Kind kind, const char* what) {
    if (tok_.kind != kind)
      throw ParseError(std::string("expected ") + what + ", got '" + tok_.text + "'",
                       tok_.line, tok_.column);
    shift();
  }

  void shift() { tok_ = lexer_.next(); }

  Lexer lexer_;
  Token tok_{};
  SymbolTable symbols_;
};

}  // namespace detail

inline ParsedSchema parse_schema(std::string_view text) {
  return detail::SchemaParser(text).parse();
}

namespace detail {

inline void print_into(const SchemaPtr& node, std::string& out, int indent) {
  auto pad = [&out](int n) { out.append(static_cast<std::size_t>(n) * 2, ' '); };
  auto call = [](const std::string& name, const std::vector<std::string>& args) {
    std::string s = name + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) s += ", ";
      s += args[i];
    }
    return s + ")";
  };
  switch (node->kind()) {
    case NodeKind::Skip:
      pad(indent);
      out += "skip;\n";
      break;
    case NodeKind::Label:
      pad(indent);
      out += "label " + node->name() + ";\n";
      break;
    case NodeKind::Assign:
      pad(indent);
      out += node->target() + " := " + call(node->name(), node->args()) + ";\n";
      break;
    case NodeKind::Seq:
      for (const auto& child : node->children()) print_into(child, out, indent);
      break;
    case NodeKind::If:
      pad(indent);
      out += "if " + call(node->name(), node->args()) + " {\n";
      print_into(node->then_part(), out, indent + 1);
      pad(indent);
      if (node->else_part()->is_skip()) {
        out += "}\n";
      } else {
        out += "} else {\n";
        print_into(node->else_part(), out, indent + 1);
        pad(indent);
        out += "}\n";
      }
      break;
    case NodeKind::While:
      pad(indent);
      out += "while " + call(node->name(), node->args()) + " {\n";
      print_into(node->body(), out, indent + 1);
      pad(indent);
      out += "}\n";
      break;
  }
}

}  // namespace detail

// Canonical source text; parsing it back yields a structurally equal schema.
inline std::string print_schema(const SchemaPtr& schema) {
  std::string out;
  detail::print_into(schema, out, 0);
  return out;
}

// Resolves whitespace-separated path tokens against the alphabet of a linear
// schema, reattaching full argument tuples.
inline Path parse_path(std::string_view text, const SchemaPtr& schema) {
  std::map<std::string, Letter> index;
  for (const Letter& letter : alphabet(schema)) index.emplace(letter.token(), letter);
  Path out;
  std::string token;
  std::size_t i = 0;
  auto flush = [&]() {
    if (token.empty()) return;
    auto it = index.find(token);
    if (it == index.end())
      throw PathError("unknown path token '" + token + "' (not in the schema's alphabet)");
    out.push_back(it->second);
    token.clear();
  };
  while (i <= text.size()) {
    char c = i < text.size() ? text[i] : ' ';
    if (c == '#') {
      flush();
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (std::isspace(static_cast<unsigned char>(c)) || i == text.size()) {
      flush();
      ++i;
    } else {
      token += c;
      ++i;
    }
  }
  return out;
}

}  // namespace schlice
