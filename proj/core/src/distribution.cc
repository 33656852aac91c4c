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

#include "cfx/distribution.h"

#include <limits>

#include "cfx/error.h"

namespace cfx {
namespace {

constexpr std::uint64_t kMaxEnumeration = std::uint64_t{1} << 24;

[[noreturn]] void Invalid(const std::string& message) {
  throw Error(ErrorCode::kInvalidInput, message);
}

}  // namespace

std::shared_ptr<const Distribution> Distribution::Uniform(SchemaPtr schema) {
  auto d = std::shared_ptr<Distribution>(new Distribution(Kind::kUniform, schema));
  std::uint64_t size = schema->ProductSize();
  if (size == std::numeric_limits<std::uint64_t>::max()) {
    Invalid("product space too large for a uniform distribution");
  }
  d->uniform_mass_ = Rational(1, size);
  return d;
}

std::shared_ptr<const Distribution> Distribution::Product(
    SchemaPtr schema, std::vector<std::vector<Rational>> marginals) {
  if (marginals.size() != schema->size()) {
    Invalid("expected marginals for " + std::to_string(schema->size()) +
            " features, got " + std::to_string(marginals.size()));
  }
  const Rational tolerance(1, 1000000000);
  for (std::size_t i = 0; i < marginals.size(); ++i) {
    const std::string& name = schema->feature(i).name;
    if (marginals[i].size() != schema->domain_size(i)) {
      Invalid("marginal of '" + name + "' does not cover its domain");
    }
    Rational sum = 0;
    for (const Rational& p : marginals[i]) {
      if (p < 0) Invalid("negative probability in the marginal of '" + name + "'");
      sum += p;
    }
    Rational gap = sum - 1;
    if (gap < 0) gap = -gap;
    if (gap > tolerance) {
      Invalid("marginal of '" + name + "' sums to " + FormatRational(sum) +
              ", not 1");
    }
    for (Rational& p : marginals[i]) p /= sum;
  }
  auto d = std::shared_ptr<Distribution>(new Distribution(Kind::kProduct, schema));
  d->marginals_ = std::move(marginals);
  return d;
}

std::shared_ptr<const Distribution> Distribution::Empirical(
    SchemaPtr schema, std::span<const ValueVector> sample) {
  if (sample.empty()) Invalid("empirical distribution needs a non-empty sample");
  auto d = std::shared_ptr<Distribution>(new Distribution(Kind::kEmpirical, schema));
  Rational unit(1, sample.size());
  for (const ValueVector& v : sample) {
    schema->CheckConforms(v);
    d->empirical_[v] += unit;
  }
  return d;
}

std::shared_ptr<const Distribution> Distribution::Conditioned(
    std::shared_ptr<const Distribution> base,
    std::vector<DenialConstraint> chi) {
  ConstraintSet check;
  check.denials = chi;
  check.Validate(base->schema());
  auto d = std::shared_ptr<Distribution>(
      new Distribution(Kind::kConditioned, base->schema_));
  Rational mass = 0;
  if (base->kind() == Kind::kEmpirical) {
    for (const auto& [v, p] : base->empirical_) {
      if (Satisfies(chi, v)) mass += p;
    }
  } else {
    if (base->schema().ProductSize() > kMaxEnumeration) {
      Invalid("product space too large to condition by enumeration");
    }
    ForEachPoint(base->schema(), [&](const ValueVector& v) {
      if (Satisfies(chi, v)) mass += base->Prob(v);
      return true;
    });
  }
  if (mass == 0) {
    throw Error(ErrorCode::kZeroMass,
                "conditioning event has zero mass under the base distribution");
  }
  d->base_ = std::move(base);
  d->chi_ = std::move(chi);
  d->condition_mass_ = mass;
  return d;
}

Rational Distribution::Prob(std::span<const ValueId> values) const {
  schema_->CheckConforms(values);
  switch (kind_) {
    case Kind::kUniform:
      return uniform_mass_;
    case Kind::kProduct: {
      Rational p = 1;
      for (std::size_t i = 0; i < values.size(); ++i) {
        p *= marginals_[i][values[i]];
      }
      return p;
    }
    case Kind::kEmpirical: {
      auto it = empirical_.find(ValueVector(values.begin(), values.end()));
      return it == empirical_.end() ? Rational(0) : it->second;
    }
    case Kind::kConditioned:
      if (!Satisfies(chi_, values)) return 0;
      return base_->Prob(values) / condition_mass_;
  }
  return 0;
}

std::string Distribution::Describe() const {
  switch (kind_) {
    case Kind::kUniform:
      return "uniform";
    case Kind::kProduct:
      return "product";
    case Kind::kEmpirical:
      return "empirical(" + std::to_string(empirical_.size()) + " distinct)";
    case Kind::kConditioned:
      return "conditioned(" + base_->Describe() + ", " +
             std::to_string(chi_.size()) + " constraints)";
  }
  return "?";
}

Rational Prob(const Distribution& d, const Entity& e) { return d.Prob(e.values); }

std::vector<std::vector<Rational>> EmpiricalMarginals(
    const FeatureSchema& schema, std::span<const ValueVector> sample) {
  if (sample.empty()) Invalid("empirical marginals need a non-empty sample");
  std::vector<std::vector<Rational>> m(schema.size());
  for (std::size_t i = 0; i < schema.size(); ++i) {
    m[i].assign(schema.domain_size(i), Rational(0));
  }
  Rational unit(1, sample.size());
  for (const ValueVector& v : sample) {
    schema.CheckConforms(v);
    for (std::size_t i = 0; i < v.size(); ++i) m[i][v[i]] += unit;
  }
  return m;
}

}  // namespace cfx
