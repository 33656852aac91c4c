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

#include <gtest/gtest.h>

#include "cfx/error.h"

namespace cfx::asp {
namespace {

std::vector<Diagnostic::Kind> Kinds(const std::vector<Diagnostic>& ds) {
  std::vector<Diagnostic::Kind> out;
  for (const auto& d : ds) out.push_back(d.kind);
  return out;
}

TEST(Tokenize, KindsAndPositions) {
  auto toks = Tokenize("p(X,a) :- q(\"s\\\"t\"), X != 3, #count{Y: r(Y)} = N. % c\n&ext(a;B)");
  std::vector<std::string> texts;
  for (const auto& t : toks) texts.push_back(t.text);
  EXPECT_EQ(texts.front(), "p");
  EXPECT_EQ(toks[2].kind, TokenKind::kVariable);
  EXPECT_EQ(toks[4].kind, TokenKind::kConstant);
  EXPECT_NE(std::find(texts.begin(), texts.end(), ":-"), texts.end());
  EXPECT_NE(std::find(texts.begin(), texts.end(), "!="), texts.end());
  EXPECT_NE(std::find(texts.begin(), texts.end(), "#count"), texts.end());
  EXPECT_EQ(std::find(texts.begin(), texts.end(), "%"), texts.end());
  EXPECT_EQ(toks.back().line, 2);
  bool saw_external = false;
  for (const auto& t : toks) saw_external |= t.kind == TokenKind::kExternal && t.text == "&ext";
  EXPECT_TRUE(saw_external);
}

TEST(Normalize, IgnoresLayoutAndComments) {
  EXPECT_EQ(Normalize("p(X) :-\n   q(X).  % done\n"), Normalize("p( X ):-q(X)."));
  EXPECT_NE(Normalize("p(X) :- q(X)."), Normalize("p(X) :- q(Y)."));
}

TEST(Parse, StatementKinds) {
  auto prog = Parse(
      "#include<ListAndSet>\n"
      "a(1). a(2).\n"
      "b(X) v c(X) :- a(X).\n"
      ":- b(X), c(X).\n"
      ":~ b(X). [1@1,X]\n"
      "n(M) :- #count{X: b(X)} = M.\n");
  ASSERT_EQ(prog.size(), 7u);
  EXPECT_EQ(prog[0].kind, StatementKind::kDirective);
  EXPECT_EQ(prog[1].kind, StatementKind::kFact);
  EXPECT_EQ(prog[3].kind, StatementKind::kRule);
  EXPECT_EQ(prog[3].head.size(), 2u);
  EXPECT_EQ(prog[3].line, 3);
  EXPECT_EQ(prog[4].kind, StatementKind::kConstraint);
  EXPECT_EQ(prog[5].kind, StatementKind::kWeak);
  EXPECT_EQ(prog[6].body.at(0).kind, LiteralKind::kAggregate);
}

TEST(Parse, BodyTextIsVerbatim) {
  auto prog = Parse("h(X) :-  a(X),\n  not b(X).");
  ASSERT_EQ(prog.size(), 1u);
  EXPECT_EQ(prog[0].body_text, "  a(X),\n  not b(X)");
  ASSERT_EQ(prog[0].body.size(), 2u);
  EXPECT_TRUE(prog[0].body[1].atom.negated);
  EXPECT_EQ(prog[0].body[1].atom.text, "b(X)");
}

TEST(Parse, ExternalAtom) {
  auto prog = Parse("cls(X,L) :- &classifier(X;L), dom(X).");
  ASSERT_EQ(prog.size(), 1u);
  const Atom& ext = prog[0].body[0].atom;
  EXPECT_EQ(ext.predicate, "&classifier");
  EXPECT_EQ(ext.args, (std::vector<std::string>{"X"}));
  EXPECT_EQ(ext.outputs, (std::vector<std::string>{"L"}));
}

TEST(Parse, SyntaxErrorsThrow) {
  EXPECT_THROW(Parse("p(X) :- q(X)"), Error);
  EXPECT_THROW(Parse("p(X :- q(X)."), Error);
  EXPECT_THROW(Parse("p(\"open."), Error);
}

TEST(Lint, CleanProgram) {
  EXPECT_TRUE(Lint("a(1). b(X) :- a(X), not c(X). c(2).").empty());
}

TEST(Lint, ArityClash) {
  auto ds = Lint("p(1).\nq(X) :- p(X,Y).\n");
  ASSERT_EQ(Kinds(ds), (std::vector<Diagnostic::Kind>{Diagnostic::Kind::kArityClash}));
  EXPECT_EQ(ds[0].line, 2);
  EXPECT_NE(ds[0].message.find("'p'"), std::string::npos) << ds[0].message;
}

TEST(Lint, UnsafeVariable) {
  auto ds = Lint("a(1).\nb(X,Y) :- a(X).\nc(X) :- a(Y), not d(X).\nd(1).\n");
  ASSERT_EQ(Kinds(ds), (std::vector<Diagnostic::Kind>{Diagnostic::Kind::kUnsafeVariable,
                                                      Diagnostic::Kind::kUnsafeVariable}));
  EXPECT_NE(ds[0].message.find("'Y'"), std::string::npos);
  EXPECT_EQ(ds[1].line, 3);
}

TEST(Lint, ComparisonOnlyVariableIsUnsafe) {
  auto ds = Lint("a(1).\n:- a(X), Y != X.\n");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].kind, Diagnostic::Kind::kUnsafeVariable);
}

TEST(Lint, BindingsThatAreSafe) {
  EXPECT_TRUE(Lint("a(1).\nn(M) :- #count{X: a(X)} = M.\n").empty());
  EXPECT_TRUE(Lint("a(1).\nb(Y) :- a(X), Y = X.\n").empty());
  EXPECT_TRUE(Lint("d(1).\nc(X,L) :- &f(X;L), d(X).\n").empty());
}

TEST(Lint, DuplicateFact) {
  auto ds = Lint("a(1).\na(2).\na(1).\n");
  ASSERT_EQ(Kinds(ds), (std::vector<Diagnostic::Kind>{Diagnostic::Kind::kDuplicateFact}));
  EXPECT_EQ(ds[0].line, 3);
  EXPECT_NE(ds[0].message.find("line 1"), std::string::npos);
}

TEST(Lint, SyntaxErrorIsOneDiagnostic) {
  auto ds = Lint("a(1).\nb(X) :- a(X\n");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].kind, Diagnostic::Kind::kSyntax);
  EXPECT_STREQ(DiagnosticKindName(ds[0].kind), "syntax");
}

}  // namespace
}  // namespace cfx::asp
