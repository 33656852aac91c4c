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

#include "cfx/constrain.h"

#include <set>
#include <string>

#include "cfx/error.h"

namespace cfx {
namespace {

[[noreturn]] void Invalid(const std::string& message) {
  throw Error(ErrorCode::kInvalidInput, message);
}

void CheckFeature(const FeatureSchema& schema, std::size_t feature,
                  const char* where) {
  if (feature >= schema.size()) {
    Invalid(std::string(where) + " references feature index " +
            std::to_string(feature) + " outside the schema");
  }
}

bool LiteralHolds(const ConstraintLiteral& lit, std::span<const ValueId> values) {
  bool eq = values[lit.feature] == lit.value;
  return lit.polarity == Polarity::kEquals ? eq : !eq;
}

}  // namespace

void ConstraintSet::Validate(const FeatureSchema& schema) const {
  for (const DenialConstraint& d : denials) {
    if (d.literals.empty()) Invalid("denial constraint without literals");
    for (const ConstraintLiteral& lit : d.literals) {
      CheckFeature(schema, lit.feature, "denial constraint");
      if (lit.value >= schema.domain_size(lit.feature)) {
        Invalid("denial constraint value outside the domain of '" +
                schema.feature(lit.feature).name + "'");
      }
    }
  }
  for (const ActionabilityRule& r : actionability) {
    CheckFeature(schema, r.feature, "actionability rule");
    if ((r.mode == ActionMode::kIncreaseOnly ||
         r.mode == ActionMode::kDecreaseOnly) &&
        !schema.feature(r.feature).ordered) {
      Invalid(std::string(ActionModeName(r.mode)) + " on '" +
              schema.feature(r.feature).name +
              "' requires a declared domain order");
    }
  }
  for (const OneHotGroup& g : onehot) {
    if (g.members.size() < 2) Invalid("one-hot group needs at least two members");
    std::set<std::size_t> seen;
    for (std::size_t m : g.members) {
      CheckFeature(schema, m, "one-hot group");
      if (!schema.IsBinary(m)) {
        Invalid("one-hot member '" + schema.feature(m).name +
                "' must have the domain {0,1}");
      }
      if (!seen.insert(m).second) {
        Invalid("one-hot group lists '" + schema.feature(m).name + "' twice");
      }
    }
  }
}

bool Satisfies(const DenialConstraint& chi, std::span<const ValueId> values) {
  for (const ConstraintLiteral& lit : chi.literals) {
    if (!LiteralHolds(lit, values)) return true;
  }
  return false;
}

bool Satisfies(std::span<const DenialConstraint> chis,
               std::span<const ValueId> values) {
  for (const DenialConstraint& chi : chis) {
    if (!Satisfies(chi, values)) return false;
  }
  return true;
}

bool Admissible(const FeatureSchema& schema, const ConstraintSet& constraints,
                std::span<const ValueId> original,
                std::span<const ValueId> candidate) {
  if (!Satisfies(constraints.denials, candidate)) return false;
  for (const ActionabilityRule& r : constraints.actionability) {
    ValueId from = original[r.feature];
    ValueId to = candidate[r.feature];
    switch (r.mode) {
      case ActionMode::kFree:
        break;
      case ActionMode::kFixed:
        if (to != from) return false;
        break;
      case ActionMode::kIncreaseOnly:
        if (to < from) return false;
        break;
      case ActionMode::kDecreaseOnly:
        if (to > from) return false;
        break;
    }
  }
  for (const OneHotGroup& g : constraints.onehot) {
    int ones = 0;
    for (std::size_t m : g.members) {
      ones += schema.ValueName(m, candidate[m]) == "1";
    }
    if (ones != 1) return false;
  }
  return true;
}

const char* ActionModeName(ActionMode mode) {
  switch (mode) {
    case ActionMode::kFree:
      return "free";
    case ActionMode::kFixed:
      return "fixed";
    case ActionMode::kIncreaseOnly:
      return "increase-only";
    case ActionMode::kDecreaseOnly:
      return "decrease-only";
  }
  return "?";
}

const char* PolarityName(Polarity polarity) {
  return polarity == Polarity::kEquals ? "eq" : "neq";
}

}  // namespace cfx
