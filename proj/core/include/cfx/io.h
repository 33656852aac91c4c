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

#ifndef CFX_IO_H_
#define CFX_IO_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cfx/aspgen.h"
#include "cfx/classify.h"
#include "cfx/constrain.h"
#include "cfx/rational.h"
#include "cfx/schema.h"
#include "cfx/score.h"
#include "cfx/search.h"

// File formats. Readers throw Error(kParse) on syntax problems and
// Error(kInvalidInput) on content that does not fit the schema. Writers
// produce compact, key-ordered JSON; equal inputs give equal bytes.
namespace cfx::io {

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view content);

// {"features":[{"name":"F1","domain":["0","1"],"ordered":false}, ...]}
SchemaPtr SchemaFromJson(std::string_view text);
std::string SchemaToJson(const FeatureSchema& schema);

// {"id":"e1","values":["0","1","1"]}
Entity EntityFromJson(const FeatureSchema& schema, std::string_view text);
std::string EntityToJson(const FeatureSchema& schema, const Entity& entity);

// Header: `id` followed by the feature names (any order); one entity per row.
std::vector<Entity> EntitiesFromCsv(const FeatureSchema& schema,
                                    std::string_view text);

// Header: feature names plus a `label` column (an `id` column is ignored).
std::shared_ptr<const TableClassifier> TableFromCsv(SchemaPtr schema,
                                                    std::string_view text);

// {"denials":[{"literals":[{"feature":..,"value":..,"polarity":"eq"}]}],
//  "actionability":[{"feature":..,"mode":"increase-only"}],
//  "onehot":[["A","B"]]}
// Missing sections are empty. The result is validated against `schema`.
ConstraintSet ConstraintsFromJson(const FeatureSchema& schema,
                                  std::string_view text);

// CSV `feature,value,probability`; probabilities are decimals or `p/q`.
// Values not listed get probability 0.
std::vector<std::vector<Rational>> MarginalsFromCsv(
    const FeatureSchema& schema, std::string_view text);

std::string SearchResultToJson(const FeatureSchema& schema,
                               const SearchResult& result);
std::string ExplanationListToJson(const FeatureSchema& schema,
                                  const Entity& original,
                                  const ExplanationList& list);
std::string RespReportToJson(const FeatureSchema& schema,
                             const RespReport& report);
std::string GlobalRespToJson(const FeatureSchema& schema, std::size_t feature,
                             const Entity& entity, const GlobalResp& resp);
std::string ExplanationToJson(const FeatureSchema& schema,
                              const Explanation& explanation);
std::string CipSectionsToJson(const CipProgram& program);

// Minimal CSV splitting: comma separated, optional double quotes with `""`
// escapes, surrounding blanks trimmed. Empty lines are skipped.
std::vector<std::vector<std::string>> ParseCsv(std::string_view text);

}  // namespace cfx::io

#endif  // CFX_IO_H_
