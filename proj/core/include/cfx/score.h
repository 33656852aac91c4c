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

#ifndef CFX_SCORE_H_
#define CFX_SCORE_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "cfx/classify.h"
#include "cfx/constrain.h"
#include "cfx/distribution.h"
#include "cfx/error.h"
#include "cfx/rational.h"
#include "cfx/search.h"

namespace cfx {

struct FeatureResp {
  std::size_t feature = 0;
  Rational score;  // 0 or 1/k
  // Smallest s-explanation containing the feature's original value. Without
  // the scored pair it is the contingency set.
  std::optional<Explanation> witness;

  bool counterfactual_value_explanation() const { return score == 1; }
  bool actual_value_explanation() const { return score > 0; }
};

struct RespReport {
  Entity entity;
  std::vector<FeatureResp> features;  // one per schema feature, in order
  SearchStats stats;
  bool authoritative = true;
  bool no_counterfactual = false;
};

// Explanatory responsibility of every feature value of `entity`, computed
// from its s-explanations.
RespReport XResp(const Classifier& classifier, const Entity& entity,
                 const ConstraintSet& constraints,
                 const SearchConfig& config = {});

struct MaxRespFeatures {
  std::vector<std::size_t> features;  // ascending
  bool no_counterfactual = false;
  bool authoritative = true;
};

// Features occurring in some c-explanation.
MaxRespFeatures MaxResponsibilityFeatures(const Classifier& classifier,
                                          const Entity& entity,
                                          const ConstraintSet& constraints,
                                          const SearchConfig& config = {});

// A contingency assignment: features to move along with the scored one, and
// their new values (aligned with `features`).
struct Contingency {
  std::vector<std::size_t> features;
  std::vector<ValueId> values;

  friend bool operator==(const Contingency&, const Contingency&) = default;
};

// The side conditions a contingency must meet before a local score exists.
enum class ContingencyCondition {
  kScoredInGamma = 1,    // the scored feature may not be in gamma
  kValueUnchanged = 2,   // every contingency value must differ from e's
  kLabelChanged = 4,     // e[gamma := w] must keep label 1
  kNoAlternative = 5,    // the scored feature needs a second domain value
};

class ContingencyError : public Error {
 public:
  ContingencyError(ContingencyCondition condition, const std::string& message)
      : Error(ErrorCode::kPrecondition, message), condition_(condition) {}

  ContingencyCondition condition() const { return condition_; }

 private:
  ContingencyCondition condition_;
};

// Local probabilistic responsibility of `scored` under contingency `gamma`:
//
//   (L(e') - E[L(e'') | e'' agrees with e' off `scored`]) / (1 + |gamma|)
//
// with e' = e[gamma := w] and the expectation taken over the domain of
// `scored` weighted by d's conditional distribution. A failed side condition
// throws ContingencyError, a conditioning slice without mass throws
// Error(kZeroMass), and a malformed contingency (length mismatch, repeated or
// unknown features) throws Error(kInvalidInput).
Rational LocalResp(const Classifier& classifier, const Distribution& d,
                   const Entity& entity, std::size_t scored,
                   const Contingency& gamma);

struct GlobalRespConfig {
  std::optional<std::size_t> max_contingency;  // bound on |gamma|
};

struct GlobalResp {
  Rational score;  // 0 when no contingency yields a positive local score
  std::optional<Contingency> witness;
  // True when max_contingency stopped the search before a positive score.
  bool truncated = false;
  // Contingencies whose conditioning slice had no mass.
  std::size_t zero_mass_skipped = 0;
  std::uint64_t classifier_calls = 0;
};

// Maximum local responsibility over contingencies of minimum size among those
// with a positive local score. Ties keep the first contingency in
// (size, feature indices, value positions) order.
GlobalResp GlobalRespScore(const Classifier& classifier, const Distribution& d,
                           const Entity& entity, std::size_t scored,
                           const GlobalRespConfig& config = {});

}  // namespace cfx

#endif  // CFX_SCORE_H_
