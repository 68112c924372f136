//
// Copyright 2026 The ilatk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef ILA_SEXPR_HPP_
#define ILA_SEXPR_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace ila {

struct SrcSpan {
  int line = 1;
  int col = 1;
  std::string str() const {
    return std::to_string(line) + ":" + std::to_string(col);
  }
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const SrcSpan& span, const std::string& msg)
      : std::runtime_error(span.str() + ": " + msg), span_(span) {}
  const SrcSpan& span() const { return span_; }

 private:
  SrcSpan span_;
};

// Atom or parenthesized list; every node carries its source position.
struct SNode {
  bool is_atom = true;
  bool quoted = false;  // "..." string atom
  std::string atom;
  std::vector<SNode> items;
  SrcSpan span;

  bool is_list() const { return !is_atom; }
  size_t size() const { return items.size(); }
  const SNode& operator[](size_t i) const {
    if (i >= items.size())
      throw SyntaxError(span, "form has only " + std::to_string(items.size()) +
                                  " elements");
    return items[i];
  }
  /// Head atom of a list, empty for anything else.
  std::string head() const {
    if (is_list() && !items.empty() && items[0].is_atom) return items[0].atom;
    return "";
  }
  const std::string& expect_atom(const char* what) const {
    if (!is_atom || quoted)
      throw SyntaxError(span, std::string("expected ") + what);
    return atom;
  }
};

namespace detail {

struct SexprLexer {
  const std::string& text;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit SexprLexer(const std::string& t) : text(t) {}

  SrcSpan here() const { return SrcSpan{line, col}; }

  void bump() {
    if (pos < text.size() && text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_space() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == ';') {
        while (pos < text.size() && text[pos] != '\n') bump();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else {
        return;
      }
    }
  }

  bool eof() {
    skip_space();
    return pos >= text.size();
  }

  SNode next() {
    skip_space();
    if (pos >= text.size()) throw SyntaxError(here(), "unexpected end of input");
    SrcSpan span = here();
    char c = text[pos];
    if (c == '(') {
      bump();
      SNode list;
      list.is_atom = false;
      list.span = span;
      while (true) {
        skip_space();
        if (pos >= text.size())
          throw SyntaxError(span, "unterminated list");
        if (text[pos] == ')') {
          bump();
          return list;
        }
        list.items.push_back(next());
      }
    }
    if (c == ')') throw SyntaxError(span, "unexpected ')'");
    if (c == '"') {
      bump();
      SNode node;
      node.span = span;
      node.quoted = true;
      while (pos < text.size() && text[pos] != '"') {
        if (text[pos] == '\\') bump();
        if (pos >= text.size()) break;
        node.atom += text[pos];
        bump();
      }
      if (pos >= text.size()) throw SyntaxError(span, "unterminated string");
      bump();
      return node;
    }
    SNode node;
    node.span = span;
    while (pos < text.size()) {
      char d = text[pos];
      if (d == '(' || d == ')' || d == ' ' || d == '\t' || d == '\r' ||
          d == '\n' || d == ';' || d == '"')
        break;
      node.atom += d;
      bump();
    }
    if (node.atom.empty()) throw SyntaxError(span, "empty token");
    return node;
  }
};

}  // namespace detail

/// Parses a sequence of top-level forms. Comments run from ';' to the end of
/// the line.
inline std::vector<SNode> parse_sexprs(const std::string& text) {
  detail::SexprLexer lex(text);
  std::vector<SNode> out;
  while (!lex.eof()) out.push_back(lex.next());
  return out;
}

inline std::string quote_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace ila

#endif  // ILA_SEXPR_HPP_
