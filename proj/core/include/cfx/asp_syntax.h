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

#ifndef CFX_ASP_SYNTAX_H_
#define CFX_ASP_SYNTAX_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cfx::asp {

enum class TokenKind {
  kConstant,  // lowercase identifier
  kVariable,  // uppercase identifier or `_`-prefixed
  kNumber,
  kString,
  kAggregate,  // `#count`, `#int`, ...
  kExternal,   // `&name`
  kPunct,      // ( ) { } [ ] , ; : . @ :- :~ | and comparison operators
};

struct Token {
  TokenKind kind;
  std::string text;
  int line = 0;
  std::size_t offset = 0;  // byte offset in the source
};

// Splits ASP source into tokens, dropping whitespace and `%` comments.
// `#include<...>` lines come back as a single kAggregate token.
std::vector<Token> Tokenize(std::string_view text);

// Whitespace- and comment-insensitive form of a program: its tokens joined by
// single spaces. Two programs are considered equal if their normal forms are.
std::string Normalize(std::string_view text);

struct Atom {
  std::string predicate;  // `&name` for external atoms
  std::vector<std::string> args;  // term texts; for externals, inputs
  std::vector<std::string> outputs;  // external outputs (after `;`)
  bool negated = false;
  std::string text;  // source slice, without `not`
};

enum class LiteralKind { kAtom, kComparison, kAggregate, kBuiltin };

struct BodyLiteral {
  LiteralKind kind = LiteralKind::kAtom;
  Atom atom;  // kAtom
  // kComparison: lhs op rhs; kAggregate: bound term (if any) and inner atoms.
  std::string lhs, op, rhs;
  std::vector<Atom> inner;
  std::string text;
};

enum class StatementKind { kFact, kRule, kConstraint, kWeak, kDirective };

struct Statement {
  StatementKind kind = StatementKind::kRule;
  std::vector<Atom> head;  // more than one: disjunction
  std::vector<BodyLiteral> body;
  std::string text;       // exact source slice, terminator included
  std::size_t begin = 0;  // byte range in the source
  std::size_t end = 0;
  int line = 0;
  // Source slices of the head and of the body (between `:-` and the final
  // `.`), kept verbatim for rewriting.
  std::string head_text;
  std::string body_text;
};

// Throws cfx::ParseError on malformed input.
std::vector<Statement> Parse(std::string_view text);

struct Diagnostic {
  enum class Kind { kSyntax, kArityClash, kUnsafeVariable, kDuplicateFact };
  Kind kind;
  int line = 0;
  std::string message;
};

const char* DiagnosticKindName(Diagnostic::Kind kind);

// Arity clashes, unsafe variables and duplicate facts. A syntax error yields
// a single kSyntax diagnostic.
std::vector<Diagnostic> Lint(std::string_view text);

}  // namespace cfx::asp

#endif  // CFX_ASP_SYNTAX_H_
