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

#ifndef CFX_RULE_DSL_H_
#define CFX_RULE_DSL_H_

#include <memory>
#include <string_view>

#include "cfx/classify.h"

namespace cfx {

// Parses the rule language:
//
//   program := rule* default
//   rule    := "if" atom ("and" atom)* "then" label NEWLINE
//   atom    := IDENT "=" VALUE
//   default := "default" label
//   label   := "0" | "1"
//
// `#` starts a comment that runs to the end of the line. Feature names and
// values are resolved against `schema`; failures throw ParseError with the
// offending line and column.
std::shared_ptr<const RuleClassifier> ParseRules(std::string_view text,
                                                 SchemaPtr schema);

}  // namespace cfx

#endif  // CFX_RULE_DSL_H_
