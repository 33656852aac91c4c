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

#ifndef CFX_SCHEMA_H_
#define CFX_SCHEMA_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cfx {

// Position of a value inside its feature's domain.
using ValueId = std::uint32_t;

// A full assignment of value positions, one per feature, in schema order.
using ValueVector = std::vector<ValueId>;

struct Feature {
  std::string name;
  std::vector<std::string> domain;
  // Declares the domain order meaningful; required by directional
  // actionability rules.
  bool ordered = false;
};

// Ordered finite categorical feature domains. Immutable once built.
class FeatureSchema {
 public:
  // Throws Error(kInvalidInput) when a name repeats, a domain is empty or has
  // duplicate values, or there are no features.
  explicit FeatureSchema(std::vector<Feature> features);

  std::size_t size() const { return features_.size(); }
  const Feature& feature(std::size_t i) const { return features_.at(i); }
  const std::vector<Feature>& features() const { return features_; }
  std::size_t domain_size(std::size_t i) const {
    return features_.at(i).domain.size();
  }

  std::optional<std::size_t> Find(std::string_view name) const;
  // Like Find but throws Error(kInvalidInput) naming the feature.
  std::size_t IndexOf(std::string_view name) const;

  std::optional<ValueId> FindValue(std::size_t feature,
                                   std::string_view value) const;
  ValueId ValueIdOf(std::size_t feature, std::string_view value) const;
  const std::string& ValueName(std::size_t feature, ValueId value) const;

  // Cardinality of the product space, saturating at UINT64_MAX.
  std::uint64_t ProductSize() const;

  // True when the domain is exactly {"0", "1"} in some order.
  bool IsBinary(std::size_t feature) const;

  bool Conforms(std::span<const ValueId> values) const;

  // Throws Error(kInvalidInput) when `values` does not conform.
  void CheckConforms(std::span<const ValueId> values) const;

  ValueVector Encode(std::span<const std::string> values) const;
  std::vector<std::string> Decode(std::span<const ValueId> values) const;

  // Comma-joined value names, e.g. "sunny,normal,weak".
  std::string Render(std::span<const ValueId> values) const;

  friend bool operator==(const FeatureSchema& a, const FeatureSchema& b);

 private:
  std::vector<Feature> features_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::unordered_map<std::string, ValueId>> value_index_;
};

struct Entity {
  std::string id;
  ValueVector values;

  friend bool operator==(const Entity&, const Entity&) = default;
};

Entity MakeEntity(const FeatureSchema& schema, std::string id,
                  std::span<const std::string> values);

// One feature-value pair. In an Intervention `value` is the new value; in an
// Explanation it is the original value that got displaced.
struct FeatureValue {
  std::size_t feature = 0;
  ValueId value = 0;

  friend auto operator<=>(const FeatureValue&, const FeatureValue&) = default;
};

// A set of simultaneous value changes on distinct features.
class Intervention {
 public:
  Intervention() = default;
  // Sorts by feature index. Throws Error(kInvalidInput) on repeated feature
  // indices, out-of-range indices, or values outside the domain.
  Intervention(const FeatureSchema& schema, std::vector<FeatureValue> changes);

  const std::vector<FeatureValue>& changes() const { return changes_; }
  std::size_t size() const { return changes_.size(); }
  bool empty() const { return changes_.empty(); }

 private:
  std::vector<FeatureValue> changes_;
};

struct Explanation {
  // Sorted by feature index; values are the ORIGINAL entity's values.
  std::vector<FeatureValue> changed;
  Entity counterfactual;

  std::size_t cardinality() const { return changed.size(); }
  std::vector<std::size_t> FeatureSet() const;
  bool Contains(std::size_t feature) const;

  friend bool operator==(const Explanation&, const Explanation&) = default;
};

// Applies `intervention` to `entity`; the id is preserved. Throws
// Error(kInvalidInput) when a new value equals the current one.
Entity ApplyIntervention(const FeatureSchema& schema, const Entity& entity,
                         const Intervention& intervention);

// The explanation that turns `original` into `other`.
Explanation Diff(const FeatureSchema& schema, const Entity& original,
                 const Entity& other);

enum class SubsetOrder { kEqual, kLess, kGreater, kIncomparable };

// Compares changed-feature sets under inclusion; values are ignored.
SubsetOrder CompareBySubset(const Explanation& a, const Explanation& b);
bool SubsetLeq(const Explanation& a, const Explanation& b);
bool CardinalityLeq(const Explanation& a, const Explanation& b);

std::size_t HammingDistance(std::span<const ValueId> a,
                            std::span<const ValueId> b);

}  // namespace cfx

#endif  // CFX_SCHEMA_H_
