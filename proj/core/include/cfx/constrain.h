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

#ifndef CFX_CONSTRAIN_H_
#define CFX_CONSTRAIN_H_

#include <cstddef>
#include <span>
#include <vector>

#include "cfx/schema.h"

namespace cfx {

enum class Polarity { kEquals, kNotEquals };

struct ConstraintLiteral {
  std::size_t feature = 0;
  ValueId value = 0;
  Polarity polarity = Polarity::kEquals;
};

// Forbids every entity that satisfies ALL literals.
struct DenialConstraint {
  std::vector<ConstraintLiteral> literals;
};

enum class ActionMode { kFree, kFixed, kIncreaseOnly, kDecreaseOnly };

struct ActionabilityRule {
  std::size_t feature = 0;
  ActionMode mode = ActionMode::kFree;
};

// Binary features encoding one bucketized value: exactly one member is "1".
struct OneHotGroup {
  std::vector<std::size_t> members;
};

struct ConstraintSet {
  std::vector<DenialConstraint> denials;
  std::vector<ActionabilityRule> actionability;
  std::vector<OneHotGroup> onehot;

  bool empty() const {
    return denials.empty() && actionability.empty() && onehot.empty();
  }

  // Throws Error(kInvalidInput) on unknown features, out-of-domain values,
  // empty denials, directional rules on unordered features, and malformed
  // one-hot groups (fewer than two members or a non-binary member).
  void Validate(const FeatureSchema& schema) const;
};

// e |= chi: true iff `values` does not match every literal of `chi`.
bool Satisfies(const DenialConstraint& chi, std::span<const ValueId> values);
bool Satisfies(std::span<const DenialConstraint> chis,
               std::span<const ValueId> values);

// Evaluated on the final candidate only; intermediate intervention states are
// not modelled.
bool Admissible(const FeatureSchema& schema, const ConstraintSet& constraints,
                std::span<const ValueId> original,
                std::span<const ValueId> candidate);

const char* ActionModeName(ActionMode mode);
const char* PolarityName(Polarity polarity);

}  // namespace cfx

#endif  // CFX_CONSTRAIN_H_
