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

#ifndef CFX_ASPGEN_H_
#define CFX_ASPGEN_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cfx/asp_syntax.h"
#include "cfx/classify.h"
#include "cfx/constrain.h"

namespace cfx {

enum class Dialect {
  kDlvComplex,  // `v` disjunction, `#include<ListAndSet>`, `#int` guard
  kAspCore2,    // `|` disjunction, weighted weak constraints, externals
};

enum class ClassifierEmbedding {
  kFacts,         // one cls/n+1 fact per table row; needs a total table
  kRules,         // cls rules compiled from a RuleClassifier
  kExternalStub,  // cls defined through `&classifier(...)`; ASP-Core-2 only
};

// Second argument of the expl atoms: the 1-based feature position, or the
// feature name as a lowercase constant.
enum class ExplKey { kIndex, kName };

struct CipOptions {
  Dialect dialect = Dialect::kDlvComplex;
  bool include_weak = false;
  bool include_count = false;
  bool shift = false;
  ClassifierEmbedding embedding = ClassifierEmbedding::kFacts;
  ExplKey expl_key = ExplKey::kIndex;
  ConstraintSet hard_constraints;  // rendered on transition (`tr`) atoms
};

struct CipSection {
  std::string name;
  int first_line = 0;  // 1-based, inclusive
  int last_line = 0;
};

struct CipProgram {
  std::string text;
  std::vector<CipSection> sections;
};

// Counterfactual intervention program for `entity` under `classifier`.
// Throws Error(kInvalidInput) when the classifier cannot be embedded as
// requested or a name cannot be rendered as a solver constant.
CipProgram EmitCip(const Classifier& classifier, const Entity& entity,
                   const CipOptions& options);

// Replaces every rule with a disjunctive head of k atoms by k rules, each
// keeping one head atom and appending `not` copies of the others to the
// body. All other statements are kept byte for byte.
std::string ShiftDisjunctiveRules(std::string_view program);

// Renders a domain value as a solver constant: lowercase identifiers and
// non-negative integers pass through, anything else becomes a quoted string
// with `"` and `\` backslash-escaped. Throws on control characters.
std::string RenderConstant(std::string_view value);

// Inverse of RenderConstant.
std::string ParseConstant(std::string_view token);

const char* DialectName(Dialect dialect);
const char* EmbeddingName(ClassifierEmbedding embedding);

}  // namespace cfx

#endif  // CFX_ASPGEN_H_
