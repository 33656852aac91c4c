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

#include "cfx/score.h"

#include <algorithm>
#include <set>

#include "cfx/error.h"
#include "enumerate.h"

namespace cfx {
namespace {

struct SliceOutcome {
  bool has_mass = false;
  Rational score;
};

// Score for a fully validated contingency point e' (already labeled 1).
SliceOutcome ScoreSlice(const Classifier& classifier, const Distribution& d,
                        const ValueVector& moved, std::size_t scored,
                        std::size_t gamma_size, std::uint64_t& calls) {
  const FeatureSchema& schema = classifier.schema();
  Rational mass = 0;
  Rational expected = 0;
  ValueVector probe = moved;
  for (ValueId v = 0; v < schema.domain_size(scored); ++v) {
    probe[scored] = v;
    Rational p = d.Prob(probe);
    if (p == 0) continue;
    mass += p;
    Label l = v == moved[scored] ? Label::kOne : classifier.Classify(probe);
    if (v != moved[scored]) ++calls;
    if (l == Label::kOne) expected += p;
  }
  SliceOutcome out;
  if (mass == 0) return out;
  out.has_mass = true;
  out.score = (1 - expected / mass) / Rational(1 + gamma_size);
  return out;
}

void RequireLabelOne(const Classifier& classifier, const Entity& entity) {
  if (Classify(classifier, entity) != Label::kOne) {
    throw Error(ErrorCode::kNothingToExplain,
                "nothing to explain: entity '" + entity.id + "' is labeled 0");
  }
}

}  // namespace

RespReport XResp(const Classifier& classifier, const Entity& entity,
                 const ConstraintSet& constraints, const SearchConfig& config) {
  ExplanationList s = SExplanations(classifier, entity, constraints, config);
  RespReport report;
  report.entity = entity;
  report.stats = s.stats;
  report.authoritative = s.authoritative;
  report.no_counterfactual = s.no_counterfactual();
  const FeatureSchema& schema = classifier.schema();
  for (std::size_t i = 0; i < schema.size(); ++i) {
    FeatureResp fr;
    fr.feature = i;
    fr.score = 0;
    for (const Explanation& x : s.explanations) {
      if (!x.Contains(i)) continue;
      if (!fr.witness || x.cardinality() < fr.witness->cardinality()) {
        fr.witness = x;
      }
    }
    if (fr.witness) fr.score = Rational(1, fr.witness->cardinality());
    report.features.push_back(std::move(fr));
  }
  return report;
}

MaxRespFeatures MaxResponsibilityFeatures(const Classifier& classifier,
                                          const Entity& entity,
                                          const ConstraintSet& constraints,
                                          const SearchConfig& config) {
  ExplanationList c = CExplanations(classifier, entity, constraints, config);
  MaxRespFeatures out;
  out.no_counterfactual = c.no_counterfactual();
  out.authoritative = c.authoritative;
  std::set<std::size_t> features;
  for (const Explanation& x : c.explanations) {
    for (const FeatureValue& fv : x.changed) features.insert(fv.feature);
  }
  out.features.assign(features.begin(), features.end());
  return out;
}

Rational LocalResp(const Classifier& classifier, const Distribution& d,
                   const Entity& entity, std::size_t scored,
                   const Contingency& gamma) {
  const FeatureSchema& schema = classifier.schema();
  schema.CheckConforms(entity.values);
  if (scored >= schema.size()) {
    throw Error(ErrorCode::kInvalidInput, "scored feature index out of range");
  }
  if (gamma.features.size() != gamma.values.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "contingency features and values differ in length");
  }
  std::set<std::size_t> seen;
  ValueVector moved = entity.values;
  for (std::size_t k = 0; k < gamma.features.size(); ++k) {
    std::size_t f = gamma.features[k];
    if (f >= schema.size() || gamma.values[k] >= schema.domain_size(f)) {
      throw Error(ErrorCode::kInvalidInput, "contingency outside the schema");
    }
    if (!seen.insert(f).second) {
      throw Error(ErrorCode::kInvalidInput, "contingency repeats feature '" +
                                                schema.feature(f).name + "'");
    }
    if (f == scored) {
      throw ContingencyError(ContingencyCondition::kScoredInGamma,
                             "scored feature '" + schema.feature(f).name +
                                 "' is part of its own contingency");
    }
    if (gamma.values[k] == entity.values[f]) {
      throw ContingencyError(ContingencyCondition::kValueUnchanged,
                             "contingency keeps '" + schema.feature(f).name +
                                 "' at its original value");
    }
    moved[f] = gamma.values[k];
  }
  if (schema.domain_size(scored) < 2) {
    throw ContingencyError(ContingencyCondition::kNoAlternative,
                           "scored feature '" + schema.feature(scored).name +
                               "' has a single domain value");
  }
  RequireLabelOne(classifier, entity);
  if (classifier.Classify(moved) != Label::kOne) {
    throw ContingencyError(ContingencyCondition::kLabelChanged,
                           "the contingency alone switches the label");
  }
  std::uint64_t calls = 0;
  SliceOutcome o =
      ScoreSlice(classifier, d, moved, scored, gamma.features.size(), calls);
  if (!o.has_mass) {
    throw Error(ErrorCode::kZeroMass,
                "no probability mass on the values of '" +
                    schema.feature(scored).name + "' around " +
                    schema.Render(moved));
  }
  return o.score;
}

GlobalResp GlobalRespScore(const Classifier& classifier, const Distribution& d,
                           const Entity& entity, std::size_t scored,
                           const GlobalRespConfig& config) {
  const FeatureSchema& schema = classifier.schema();
  schema.CheckConforms(entity.values);
  if (scored >= schema.size()) {
    throw Error(ErrorCode::kInvalidInput, "scored feature index out of range");
  }
  GlobalResp out;
  out.score = 0;
  RequireLabelOne(classifier, entity);
  ++out.classifier_calls;
  if (schema.domain_size(scored) < 2) return out;

  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (i != scored) others.push_back(i);
  }
  const std::size_t limit =
      std::min(config.max_contingency.value_or(others.size()), others.size());
  for (std::size_t g = 0; g <= limit; ++g) {
    std::optional<Contingency> best;
    Rational best_score = 0;
    internal::ForEachCombination(
        others.size(), g, [&](const std::vector<std::size_t>& picks) {
          std::vector<std::size_t> features;
          for (std::size_t p : picks) features.push_back(others[p]);
          internal::ForEachAlteration(
              schema, entity.values, features, [&](const ValueVector& moved) {
                if (g > 0) {
                  ++out.classifier_calls;
                  if (classifier.Classify(moved) != Label::kOne) return;
                }
                SliceOutcome o = ScoreSlice(classifier, d, moved, scored, g,
                                            out.classifier_calls);
                if (!o.has_mass) {
                  ++out.zero_mass_skipped;
                  return;
                }
                if (o.score > 0 && (!best || o.score > best_score)) {
                  best_score = o.score;
                  Contingency c;
                  c.features = features;
                  for (std::size_t f : features) c.values.push_back(moved[f]);
                  best = std::move(c);
                }
              });
        });
    if (best) {
      out.score = best_score;
      out.witness = std::move(best);
      return out;
    }
  }
  out.truncated = limit < others.size();
  return out;
}

}  // namespace cfx
