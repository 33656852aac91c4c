// Copyright 2026 The cfx Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cfx/asp_syntax.h"

#include <cctype>
#include <map>
#include <set>

#include "cfx/error.h"

namespace cfx::asp {
namespace {

bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

int ColumnOf(std::string_view text, std::size_t offset) {
  std::size_t start = text.rfind('\n', offset == 0 ? 0 : offset - 1);
  if (offset == 0 || start == std::string_view::npos) {
    return static_cast<int>(offset) + 1;
  }
  return static_cast<int>(offset - start);
}

[[noreturn]] void Fail(std::string_view text, int line, std::size_t offset,
                       const std::string& message) {
  throw ParseError(line, ColumnOf(text, offset), message);
}

bool IsComparison(const std::string& t) {
  return t == "=" || t == "==" || t == "!=" || t == "<>" || t == "<" ||
         t == ">" || t == "<=" || t == ">=";
}

bool IsAnonymous(const std::string& v) { return !v.empty() && v[0] == '_'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text), tokens_(Tokenize(text)) {}

  std::vector<Statement> Run() {
    std::vector<Statement> out;
    while (pos_ < tokens_.size()) out.push_back(ParseStatement());
    return out;
  }

 private:
  const Token& Peek(std::size_t ahead = 0) const {
    static const Token kEnd{TokenKind::kPunct, "", 0, 0};
    return pos_ + ahead < tokens_.size() ? tokens_[pos_ + ahead] : kEnd;
  }
  bool AtEnd() const { return pos_ >= tokens_.size(); }
  bool PeekIs(const char* s) const { return !AtEnd() && Peek().text == s; }

  [[noreturn]] void FailHere(const std::string& message) const {
    if (AtEnd()) {
      int line = tokens_.empty() ? 1 : tokens_.back().line;
      Fail(text_, line, text_.size(), message + " at end of input");
    }
    Fail(text_, Peek().line, Peek().offset,
         message + " near '" + Peek().text + "'");
  }

  const Token& Expect(const char* s) {
    if (!PeekIs(s)) FailHere(std::string("expected '") + s + "'");
    return tokens_[pos_++];
  }

  std::size_t EndOf(const Token& t) const { return t.offset + t.text.size(); }
  std::size_t PrevEnd() const { return EndOf(tokens_[pos_ - 1]); }

  std::string Slice(std::size_t b, std::size_t e) const {
    return std::string(text_.substr(b, e - b));
  }

  // A term runs until `,` `)` `;` `}` `:` or a comparison at bracket depth 0.
  std::string ParseTerm(bool stop_at_comparison) {
    std::size_t begin = AtEnd() ? text_.size() : Peek().offset;
    int depth = 0;
    std::size_t count = 0;
    while (!AtEnd()) {
      const Token& t = Peek();
      if (t.kind == TokenKind::kPunct) {
        if (depth == 0 && (t.text == "," || t.text == ")" || t.text == ";" ||
                           t.text == "}" || t.text == ":" || t.text == "." ||
                           t.text == ":-" || t.text == "|" || t.text == "]")) {
          break;
        }
        if (depth == 0 && stop_at_comparison && IsComparison(t.text)) break;
        if (t.text == "(") ++depth;
        if (t.text == ")") --depth;
      }
      ++pos_;
      ++count;
    }
    if (count == 0) FailHere("expected a term");
    return Slice(begin, PrevEnd());
  }

  Atom ParseAtom() {
    Atom atom;
    const Token& name = Peek();
    if (name.kind != TokenKind::kConstant && name.kind != TokenKind::kExternal) {
      FailHere("expected an atom");
    }
    ++pos_;
    atom.predicate = name.text;
    if (PeekIs("(")) {
      ++pos_;
      if (!PeekIs(")")) {
        std::vector<std::string>* target = &atom.args;
        while (true) {
          target->push_back(ParseTerm(false));
          if (PeekIs(",")) {
            ++pos_;
            continue;
          }
          if (PeekIs(";") && name.kind == TokenKind::kExternal &&
              target == &atom.args) {
            ++pos_;
            target = &atom.outputs;
            continue;
          }
          break;
        }
      }
      Expect(")");
    }
    atom.text = Slice(name.offset, PrevEnd());
    return atom;
  }

  bool LooksLikeAtom() const {
    const Token& t = Peek();
    if (t.kind == TokenKind::kExternal) return true;
    if (t.kind != TokenKind::kConstant) return false;
    // A constant followed by a comparison is the left side of a comparison.
    const Token& next = Peek(1);
    return !(next.kind == TokenKind::kPunct && IsComparison(next.text));
  }

  void ParseAggregateBody(BodyLiteral& lit) {
    Expect("{");
    while (!PeekIs("}")) {
      if (AtEnd()) FailHere("unterminated aggregate");
      // Element terms, then `:` and condition literals.
      while (!PeekIs(":") && !PeekIs("}") && !PeekIs(";")) {
        ParseTerm(false);
        if (PeekIs(",")) ++pos_;
      }
      if (PeekIs(":")) {
        ++pos_;
        while (true) {
          BodyLiteral inner = ParseLiteral(/*allow_aggregate=*/false);
          if (inner.kind == LiteralKind::kAtom) lit.inner.push_back(inner.atom);
          if (PeekIs(",")) {
            ++pos_;
            continue;
          }
          break;
        }
      }
      if (PeekIs(";")) ++pos_;
    }
    Expect("}");
  }

  BodyLiteral ParseLiteral(bool allow_aggregate) {
    BodyLiteral lit;
    std::size_t begin = AtEnd() ? text_.size() : Peek().offset;
    if (PeekIs("not")) {
      ++pos_;
      lit.kind = LiteralKind::kAtom;
      lit.atom = ParseAtom();
      lit.atom.negated = true;
    } else if (Peek().kind == TokenKind::kAggregate && Peek().text == "#int") {
      ++pos_;
      lit.kind = LiteralKind::kBuiltin;
      lit.atom.predicate = "#int";
      Expect("(");
      lit.atom.args.push_back(ParseTerm(false));
      Expect(")");
      lit.atom.text = Slice(begin, PrevEnd());
    } else if (Peek().kind == TokenKind::kAggregate) {
      if (!allow_aggregate) FailHere("nested aggregate");
      lit.kind = LiteralKind::kAggregate;
      lit.atom.predicate = Peek().text;
      ++pos_;
      ParseAggregateBody(lit);
      if (!AtEnd() && Peek().kind == TokenKind::kPunct &&
          IsComparison(Peek().text)) {
        lit.op = Peek().text;
        ++pos_;
        lit.rhs = ParseTerm(true);
      }
    } else if (LooksLikeAtom()) {
      lit.kind = LiteralKind::kAtom;
      lit.atom = ParseAtom();
    } else {
      std::string lhs = ParseTerm(true);
      if (AtEnd() || !IsComparison(Peek().text)) {
        FailHere("expected a comparison operator");
      }
      std::string op = Peek().text;
      ++pos_;
      if (Peek().kind == TokenKind::kAggregate && Peek().text != "#int") {
        if (!allow_aggregate) FailHere("nested aggregate");
        lit.kind = LiteralKind::kAggregate;
        lit.atom.predicate = Peek().text;
        ++pos_;
        lit.lhs = lhs;
        lit.op = op;
        ParseAggregateBody(lit);
      } else {
        lit.kind = LiteralKind::kComparison;
        lit.lhs = lhs;
        lit.op = op;
        lit.rhs = ParseTerm(true);
      }
    }
    lit.text = Slice(begin, PrevEnd());
    return lit;
  }

  std::vector<BodyLiteral> ParseBody() {
    std::vector<BodyLiteral> body;
    while (true) {
      body.push_back(ParseLiteral(true));
      if (PeekIs(",")) {
        ++pos_;
        continue;
      }
      return body;
    }
  }

  Statement ParseStatement() {
    Statement st;
    const Token& first = Peek();
    st.begin = first.offset;
    st.line = first.line;
    if (first.kind == TokenKind::kAggregate &&
        first.text.rfind("#include", 0) == 0) {
      ++pos_;
      st.kind = StatementKind::kDirective;
      st.end = PrevEnd();
      st.text = Slice(st.begin, st.end);
      return st;
    }
    if (first.kind == TokenKind::kAggregate && first.text != "#count" &&
        first.text != "#sum" && first.text != "#int") {
      // Other directives (`#show`, `#const`, ...) run to the next `.`.
      while (!AtEnd() && !PeekIs(".")) ++pos_;
      Expect(".");
      st.kind = StatementKind::kDirective;
      st.end = PrevEnd();
      st.text = Slice(st.begin, st.end);
      return st;
    }
    std::size_t body_begin = 0;
    if (PeekIs(":-") || PeekIs(":~")) {
      st.kind = PeekIs(":-") ? StatementKind::kConstraint : StatementKind::kWeak;
      ++pos_;
      body_begin = PrevEnd();
      st.body = ParseBody();
    } else {
      std::size_t head_begin = Peek().offset;
      st.head.push_back(ParseAtom());
      while (PeekIs("|") || PeekIs("v")) {
        ++pos_;
        st.head.push_back(ParseAtom());
      }
      st.head_text = Slice(head_begin, PrevEnd());
      if (PeekIs(":-")) {
        ++pos_;
        body_begin = PrevEnd();
        st.body = ParseBody();
        st.kind = StatementKind::kRule;
      } else {
        st.kind = st.head.size() == 1 ? StatementKind::kFact
                                      : StatementKind::kRule;
      }
    }
    if (!PeekIs(".")) FailHere("expected '.'");
    if (!st.body.empty()) st.body_text = Slice(body_begin, Peek().offset);
    ++pos_;
    if (st.kind == StatementKind::kWeak && PeekIs("[")) {
      while (!AtEnd() && !PeekIs("]")) ++pos_;
      Expect("]");
    }
    st.end = PrevEnd();
    st.text = Slice(st.begin, st.end);
    return st;
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::vector<std::string> VariablesOf(const std::string& term) {
  std::vector<std::string> out;
  for (const Token& t : Tokenize(term)) {
    if (t.kind == TokenKind::kVariable && !IsAnonymous(t.text)) {
      out.push_back(t.text);
    }
  }
  return out;
}

void AddVariables(const std::vector<std::string>& terms,
                  std::set<std::string>& into) {
  for (const std::string& term : terms) {
    for (std::string& v : VariablesOf(term)) into.insert(std::move(v));
  }
}

bool AllIn(const std::string& term, const std::set<std::string>& bound) {
  for (const std::string& v : VariablesOf(term)) {
    if (!bound.count(v)) return false;
  }
  return true;
}

std::set<std::string> BoundVariables(const Statement& st) {
  std::set<std::string> bound;
  for (const BodyLiteral& lit : st.body) {
    if (lit.kind == LiteralKind::kAtom && !lit.atom.negated) {
      if (lit.atom.predicate[0] == '&') {
        AddVariables(lit.atom.outputs, bound);
      } else {
        AddVariables(lit.atom.args, bound);
      }
    } else if (lit.kind == LiteralKind::kBuiltin) {
      AddVariables(lit.atom.args, bound);
    } else if (lit.kind == LiteralKind::kAggregate && lit.op == "=") {
      AddVariables({lit.lhs, lit.rhs}, bound);
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const BodyLiteral& lit : st.body) {
      if (lit.kind != LiteralKind::kComparison || lit.op != "=") continue;
      const std::string* sides[2][2] = {{&lit.lhs, &lit.rhs},
                                        {&lit.rhs, &lit.lhs}};
      for (auto& side : sides) {
        std::vector<std::string> target = VariablesOf(*side[0]);
        if (target.size() == 1 && *side[0] == target[0] &&
            !bound.count(target[0]) && AllIn(*side[1], bound)) {
          bound.insert(target[0]);
          changed = true;
        }
      }
    }
  }
  return bound;
}

std::set<std::string> UsedVariables(const Statement& st) {
  std::set<std::string> used;
  for (const Atom& h : st.head) AddVariables(h.args, used);
  for (const BodyLiteral& lit : st.body) {
    switch (lit.kind) {
      case LiteralKind::kAtom:
        AddVariables(lit.atom.args, used);
        AddVariables(lit.atom.outputs, used);
        break;
      case LiteralKind::kBuiltin:
        AddVariables(lit.atom.args, used);
        break;
      case LiteralKind::kComparison:
        AddVariables({lit.lhs, lit.rhs}, used);
        break;
      case LiteralKind::kAggregate:
        AddVariables({lit.lhs, lit.rhs}, used);
        break;
    }
  }
  return used;
}

}  // namespace

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  std::size_t i = 0;
  auto push = [&](TokenKind kind, std::size_t begin, std::size_t end) {
    out.push_back(Token{kind, std::string(text.substr(begin, end - begin)),
                        line, begin});
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    std::size_t begin = i;
    if (text.substr(i, 8) == "#include") {
      std::size_t close = text.find('>', i);
      std::size_t eol = text.find('\n', i);
      if (close == std::string_view::npos || close > eol) {
        Fail(text, line, i, "unterminated #include");
      }
      i = close + 1;
      push(TokenKind::kAggregate, begin, i);
      continue;
    }
    if (c == '#' || c == '&') {
      ++i;
      while (i < text.size() && IsIdentChar(text[i])) ++i;
      if (i == begin + 1) Fail(text, line, begin, "stray '" + std::string(1, c) + "'");
      push(c == '#' ? TokenKind::kAggregate : TokenKind::kExternal, begin, i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < text.size() && IsIdentChar(text[i])) ++i;
      bool var = std::isupper(static_cast<unsigned char>(c)) || c == '_';
      push(var ? TokenKind::kVariable : TokenKind::kConstant, begin, i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        ++i;
      }
      push(TokenKind::kNumber, begin, i);
      continue;
    }
    if (c == '"') {
      ++i;
      while (i < text.size() && text[i] != '"') {
        if (text[i] == '\n') Fail(text, line, begin, "unterminated string");
        if (text[i] == '\\') ++i;
        ++i;
      }
      if (i >= text.size()) Fail(text, line, begin, "unterminated string");
      ++i;
      push(TokenKind::kString, begin, i);
      continue;
    }
    static const char* kTwo[] = {":-", ":~", "!=", "<>", "<=", ">=", "=="};
    bool matched = false;
    for (const char* two : kTwo) {
      if (text.substr(i, 2) == two) {
        i += 2;
        push(TokenKind::kPunct, begin, i);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string_view("(){}[],;:.@|=<>+-*/\\").find(c) != std::string_view::npos) {
      ++i;
      push(TokenKind::kPunct, begin, i);
      continue;
    }
    Fail(text, line, i, "unexpected character '" + std::string(1, c) + "'");
  }
  return out;
}

std::string Normalize(std::string_view text) {
  std::string out;
  for (const Token& t : Tokenize(text)) {
    if (!out.empty()) out += ' ';
    out += t.text;
  }
  return out;
}

std::vector<Statement> Parse(std::string_view text) {
  return Parser(text).Run();
}

const char* DiagnosticKindName(Diagnostic::Kind kind) {
  switch (kind) {
    case Diagnostic::Kind::kSyntax:
      return "syntax";
    case Diagnostic::Kind::kArityClash:
      return "arity-clash";
    case Diagnostic::Kind::kUnsafeVariable:
      return "unsafe-variable";
    case Diagnostic::Kind::kDuplicateFact:
      return "duplicate-fact";
  }
  return "unknown";
}

std::vector<Diagnostic> Lint(std::string_view text) {
  std::vector<Diagnostic> out;
  std::vector<Statement> program;
  try {
    program = Parse(text);
  } catch (const ParseError& e) {
    out.push_back({Diagnostic::Kind::kSyntax, e.line(), e.what()});
    return out;
  }
  std::map<std::string, std::pair<std::size_t, int>> arity;
  std::map<std::string, int> facts;
  auto check_arity = [&](const Atom& a, int line) {
    if (a.predicate.empty() || a.predicate[0] == '&' || a.predicate[0] == '#') {
      return;
    }
    auto [it, fresh] = arity.emplace(a.predicate, std::pair{a.args.size(), line});
    if (!fresh && it->second.first != a.args.size()) {
      out.push_back({Diagnostic::Kind::kArityClash, line,
                     "predicate '" + a.predicate + "' used with arity " +
                         std::to_string(a.args.size()) + " but arity " +
                         std::to_string(it->second.first) + " at line " +
                         std::to_string(it->second.second)});
    }
  };
  for (const Statement& st : program) {
    if (st.kind == StatementKind::kDirective) continue;
    for (const Atom& h : st.head) check_arity(h, st.line);
    for (const BodyLiteral& lit : st.body) {
      if (lit.kind == LiteralKind::kAtom) check_arity(lit.atom, st.line);
      for (const Atom& a : lit.inner) check_arity(a, st.line);
    }
    if (st.kind == StatementKind::kFact) {
      std::string key = Normalize(st.text);
      auto [it, fresh] = facts.emplace(key, st.line);
      if (!fresh) {
        out.push_back({Diagnostic::Kind::kDuplicateFact, st.line,
                       "duplicate fact '" + st.head[0].text +
                           "' (first at line " + std::to_string(it->second) +
                           ")"});
      }
    }
    std::set<std::string> bound = BoundVariables(st);
    for (const std::string& v : UsedVariables(st)) {
      if (!bound.count(v)) {
        out.push_back({Diagnostic::Kind::kUnsafeVariable, st.line,
                       "variable '" + v + "' is unsafe in '" + st.text + "'"});
      }
    }
  }
  return out;
}

}  // namespace cfx::asp
