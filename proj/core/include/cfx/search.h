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

#ifndef CFX_SEARCH_H_
#define CFX_SEARCH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cfx/classify.h"
#include "cfx/constrain.h"
#include "cfx/schema.h"

namespace cfx {

enum class SearchMode {
  // Classifies the whole product space, then filters.
  kExhaustiveOracle,
  // Visits candidates by increasing Hamming distance from the original.
  kLevelwise,
};

struct SearchConfig {
  std::optional<std::size_t> max_cardinality;
  std::optional<std::uint64_t> budget;  // cap on classifier calls
  SearchMode mode = SearchMode::kLevelwise;
  // Worker threads used to classify one level; results are merged in
  // generation order regardless.
  unsigned jobs = 1;

  void Validate(const FeatureSchema& schema) const;
};

struct SearchStats {
  std::uint64_t classifier_calls = 0;
  std::size_t levels_explored = 0;
  std::uint64_t inadmissible = 0;     // candidates rejected by constraints
  std::uint64_t pruned = 0;           // candidates skipped as supersets
};

struct SearchResult {
  Entity original;
  std::vector<Explanation> counterfactuals;
  std::vector<bool> s_minimal;
  std::vector<bool> c_minimal;
  SearchStats stats;
  // False when a cardinality bound or the call budget cut the search short.
  bool exhausted = true;

  bool has_counterfactual() const { return !counterfactuals.empty(); }
  std::optional<std::size_t> min_cardinality() const;
};

// Output of the c- and s-explanation queries.
struct ExplanationList {
  std::vector<Explanation> explanations;
  SearchStats stats;
  // False when truncation could have hidden explanations (or, for the s-set,
  // hidden a smaller witness).
  bool authoritative = true;

  bool no_counterfactual() const { return explanations.empty(); }
};

// All admissible label-0 entities within the cardinality bound, in
// generation order: by distance, then by feature-index set, then by value
// positions. Throws Error(kNothingToExplain) if `entity` is not labeled 1;
// backend errors are rethrown with the offending entity attached.
SearchResult EnumerateCounterfactuals(const Classifier& classifier,
                                      const Entity& entity,
                                      const ConstraintSet& constraints,
                                      const SearchConfig& config = {});

// Counterfactuals at the minimum distance d*. Level-wise search stops at the
// first level with a hit.
ExplanationList CExplanations(const Classifier& classifier,
                              const Entity& entity,
                              const ConstraintSet& constraints,
                              const SearchConfig& config = {});

// Counterfactuals whose changed-feature set has no proper subset that is
// itself a counterfactual. Level-wise search skips supersets of hits.
ExplanationList SExplanations(const Classifier& classifier,
                              const Entity& entity,
                              const ConstraintSet& constraints,
                              const SearchConfig& config = {});

// Marks s- and c-minimal entries in place and checks that every c-minimal
// entry is s-minimal; throws std::logic_error otherwise.
void MarkMinimal(SearchResult& result);

// Canonical generation order used by every search mode.
bool GenerationOrderLess(const Explanation& a, const Explanation& b);

}  // namespace cfx

#endif  // CFX_SEARCH_H_
