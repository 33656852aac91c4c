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

#ifndef CFX_DISTRIBUTION_H_
#define CFX_DISTRIBUTION_H_

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cfx/classify.h"
#include "cfx/constrain.h"
#include "cfx/rational.h"

namespace cfx {

// Probability model over the entity population (the schema's product space).
class Distribution {
 public:
  enum class Kind { kUniform, kProduct, kEmpirical, kConditioned };

  static std::shared_ptr<const Distribution> Uniform(SchemaPtr schema);

  // `marginals[i][v]` is the probability of value v for feature i. Each row
  // must sum to 1 within 1e-9 and is then renormalized to sum to exactly 1.
  static std::shared_ptr<const Distribution> Product(
      SchemaPtr schema, std::vector<std::vector<Rational>> marginals);

  // Frequency of each value vector in a non-empty sample.
  static std::shared_ptr<const Distribution> Empirical(
      SchemaPtr schema, std::span<const ValueVector> sample);

  // base(. | E(chi)). Throws Error(kZeroMass) when base gives E(chi) no mass.
  static std::shared_ptr<const Distribution> Conditioned(
      std::shared_ptr<const Distribution> base,
      std::vector<DenialConstraint> chi);

  Kind kind() const { return kind_; }
  const FeatureSchema& schema() const { return *schema_; }

  Rational Prob(std::span<const ValueId> values) const;

  // Normalizer of a conditioned distribution: base mass of E(chi).
  const Rational& condition_mass() const { return condition_mass_; }

  std::string Describe() const;

 private:
  Distribution(Kind kind, SchemaPtr schema) : kind_(kind), schema_(schema) {}

  Kind kind_;
  SchemaPtr schema_;
  Rational uniform_mass_;
  std::vector<std::vector<Rational>> marginals_;
  std::map<ValueVector, Rational> empirical_;
  std::shared_ptr<const Distribution> base_;
  std::vector<DenialConstraint> chi_;
  Rational condition_mass_;
};

using DistributionPtr = std::shared_ptr<const Distribution>;

Rational Prob(const Distribution& d, const Entity& e);

// Per-feature value frequencies of a sample; feeds Distribution::Product to
// obtain the empirical product distribution.
std::vector<std::vector<Rational>> EmpiricalMarginals(
    const FeatureSchema& schema, std::span<const ValueVector> sample);

}  // namespace cfx

#endif  // CFX_DISTRIBUTION_H_
