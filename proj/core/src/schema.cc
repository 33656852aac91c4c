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

#include "cfx/schema.h"

#include <algorithm>
#include <limits>
#include <set>

#include "cfx/error.h"

namespace cfx {
namespace {

[[noreturn]] void Invalid(const std::string& message) {
  throw Error(ErrorCode::kInvalidInput, message);
}

}  // namespace

FeatureSchema::FeatureSchema(std::vector<Feature> features)
    : features_(std::move(features)) {
  if (features_.empty()) Invalid("schema has no features");
  value_index_.resize(features_.size());
  for (std::size_t i = 0; i < features_.size(); ++i) {
    const Feature& f = features_[i];
    if (f.name.empty()) Invalid("feature " + std::to_string(i) + " has no name");
    if (!index_.emplace(f.name, i).second) {
      Invalid("duplicate feature name '" + f.name + "'");
    }
    if (f.domain.empty()) Invalid("feature '" + f.name + "' has an empty domain");
    for (std::size_t v = 0; v < f.domain.size(); ++v) {
      if (!value_index_[i].emplace(f.domain[v], static_cast<ValueId>(v)).second) {
        Invalid("feature '" + f.name + "' repeats domain value '" +
                f.domain[v] + "'");
      }
    }
  }
}

std::optional<std::size_t> FeatureSchema::Find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FeatureSchema::IndexOf(std::string_view name) const {
  auto i = Find(name);
  if (!i) Invalid("unknown feature '" + std::string(name) + "'");
  return *i;
}

std::optional<ValueId> FeatureSchema::FindValue(std::size_t feature,
                                                std::string_view value) const {
  const auto& idx = value_index_.at(feature);
  auto it = idx.find(std::string(value));
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

ValueId FeatureSchema::ValueIdOf(std::size_t feature,
                                 std::string_view value) const {
  auto v = FindValue(feature, value);
  if (!v) {
    Invalid("value '" + std::string(value) + "' is not in the domain of '" +
            features_.at(feature).name + "'");
  }
  return *v;
}

const std::string& FeatureSchema::ValueName(std::size_t feature,
                                            ValueId value) const {
  return features_.at(feature).domain.at(value);
}

std::uint64_t FeatureSchema::ProductSize() const {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t n = 1;
  for (const Feature& f : features_) {
    if (n > kMax / f.domain.size()) return kMax;
    n *= f.domain.size();
  }
  return n;
}

bool FeatureSchema::IsBinary(std::size_t feature) const {
  const auto& d = features_.at(feature).domain;
  return d.size() == 2 && std::set<std::string>(d.begin(), d.end()) ==
                              std::set<std::string>{"0", "1"};
}

bool FeatureSchema::Conforms(std::span<const ValueId> values) const {
  if (values.size() != features_.size()) return false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= features_[i].domain.size()) return false;
  }
  return true;
}

void FeatureSchema::CheckConforms(std::span<const ValueId> values) const {
  if (values.size() != features_.size()) {
    Invalid("entity has " + std::to_string(values.size()) +
            " values, schema has " + std::to_string(features_.size()) +
            " features");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= features_[i].domain.size()) {
      Invalid("value position " + std::to_string(values[i]) +
              " out of range for feature '" + features_[i].name + "'");
    }
  }
}

ValueVector FeatureSchema::Encode(std::span<const std::string> values) const {
  if (values.size() != features_.size()) {
    Invalid("expected " + std::to_string(features_.size()) + " values, got " +
            std::to_string(values.size()));
  }
  ValueVector out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = ValueIdOf(i, values[i]);
  }
  return out;
}

std::vector<std::string> FeatureSchema::Decode(
    std::span<const ValueId> values) const {
  CheckConforms(values);
  std::vector<std::string> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.push_back(ValueName(i, values[i]));
  }
  return out;
}

std::string FeatureSchema::Render(std::span<const ValueId> values) const {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += i < features_.size() && values[i] < features_[i].domain.size()
               ? ValueName(i, values[i])
               : "?";
  }
  return out;
}

bool operator==(const FeatureSchema& a, const FeatureSchema& b) {
  if (a.features_.size() != b.features_.size()) return false;
  for (std::size_t i = 0; i < a.features_.size(); ++i) {
    const Feature& x = a.features_[i];
    const Feature& y = b.features_[i];
    if (x.name != y.name || x.domain != y.domain || x.ordered != y.ordered) {
      return false;
    }
  }
  return true;
}

Entity MakeEntity(const FeatureSchema& schema, std::string id,
                  std::span<const std::string> values) {
  return Entity{std::move(id), schema.Encode(values)};
}

Intervention::Intervention(const FeatureSchema& schema,
                           std::vector<FeatureValue> changes)
    : changes_(std::move(changes)) {
  std::sort(changes_.begin(), changes_.end());
  for (std::size_t k = 0; k < changes_.size(); ++k) {
    const FeatureValue& c = changes_[k];
    if (c.feature >= schema.size()) {
      Invalid("intervention touches feature index " +
              std::to_string(c.feature) + ", schema has " +
              std::to_string(schema.size()));
    }
    if (c.value >= schema.domain_size(c.feature)) {
      Invalid("intervention value out of the domain of '" +
              schema.feature(c.feature).name + "'");
    }
    if (k > 0 && changes_[k - 1].feature == c.feature) {
      Invalid("intervention changes '" + schema.feature(c.feature).name +
              "' twice");
    }
  }
}

std::vector<std::size_t> Explanation::FeatureSet() const {
  std::vector<std::size_t> out;
  out.reserve(changed.size());
  for (const FeatureValue& c : changed) out.push_back(c.feature);
  return out;
}

bool Explanation::Contains(std::size_t feature) const {
  return std::any_of(changed.begin(), changed.end(),
                     [&](const FeatureValue& c) { return c.feature == feature; });
}

Entity ApplyIntervention(const FeatureSchema& schema, const Entity& entity,
                         const Intervention& intervention) {
  schema.CheckConforms(entity.values);
  Entity out = entity;
  for (const FeatureValue& c : intervention.changes()) {
    if (c.feature >= schema.size() || c.value >= schema.domain_size(c.feature)) {
      Invalid("intervention does not fit the schema");
    }
    if (entity.values[c.feature] == c.value) {
      Invalid("intervention keeps '" + schema.feature(c.feature).name +
              "' at its current value '" +
              schema.ValueName(c.feature, c.value) + "'");
    }
    out.values[c.feature] = c.value;
  }
  return out;
}

Explanation Diff(const FeatureSchema& schema, const Entity& original,
                 const Entity& other) {
  schema.CheckConforms(original.values);
  schema.CheckConforms(other.values);
  Explanation ex;
  for (std::size_t i = 0; i < original.values.size(); ++i) {
    if (original.values[i] != other.values[i]) {
      ex.changed.push_back({i, original.values[i]});
    }
  }
  ex.counterfactual = other;
  return ex;
}

SubsetOrder CompareBySubset(const Explanation& a, const Explanation& b) {
  auto fa = a.FeatureSet();
  auto fb = b.FeatureSet();
  bool a_in_b = std::includes(fb.begin(), fb.end(), fa.begin(), fa.end());
  bool b_in_a = std::includes(fa.begin(), fa.end(), fb.begin(), fb.end());
  if (a_in_b && b_in_a) return SubsetOrder::kEqual;
  if (a_in_b) return SubsetOrder::kLess;
  if (b_in_a) return SubsetOrder::kGreater;
  return SubsetOrder::kIncomparable;
}

bool SubsetLeq(const Explanation& a, const Explanation& b) {
  auto o = CompareBySubset(a, b);
  return o == SubsetOrder::kEqual || o == SubsetOrder::kLess;
}

bool CardinalityLeq(const Explanation& a, const Explanation& b) {
  return a.cardinality() <= b.cardinality();
}

std::size_t HammingDistance(std::span<const ValueId> a,
                            std::span<const ValueId> b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) d += a[i] != b[i];
  return d;
}

}  // namespace cfx
