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

#include "cfx/classify.h"

#include <mutex>

#include "cfx/error.h"

namespace cfx {

Label Classify(const Classifier& classifier, const Entity& entity) {
  classifier.schema().CheckConforms(entity.values);
  return classifier.Classify(entity.values);
}

TableClassifier::TableClassifier(SchemaPtr schema, std::vector<Row> rows)
    : Classifier(std::move(schema)), rows_(std::move(rows)) {
  for (const Row& row : rows_) {
    this->schema().CheckConforms(row.values);
    if (!lookup_.emplace(row.values, row.label).second) {
      throw Error(ErrorCode::kInvalidInput,
                  "table repeats the row " + this->schema().Render(row.values));
    }
  }
}

Label TableClassifier::Classify(std::span<const ValueId> values) const {
  auto it = lookup_.find(ValueVector(values.begin(), values.end()));
  if (it == lookup_.end()) {
    throw Error(ErrorCode::kBackend,
                "table has no row for " + schema().Render(values));
  }
  return it->second;
}

std::string TableClassifier::Describe() const {
  return "table(" + std::to_string(rows_.size()) + "/" +
         std::to_string(schema().ProductSize()) + " rows)";
}

bool TableClassifier::IsTotal() const {
  return rows_.size() == schema().ProductSize();
}

RuleClassifier::RuleClassifier(SchemaPtr schema, std::vector<Rule> rules,
                               Label fallback)
    : Classifier(std::move(schema)), rules_(std::move(rules)),
      fallback_(fallback) {
  for (const Rule& rule : rules_) {
    for (const RuleAtom& a : rule.atoms) {
      if (a.feature >= this->schema().size() ||
          a.value >= this->schema().domain_size(a.feature)) {
        throw Error(ErrorCode::kInvalidInput, "rule atom outside the schema");
      }
    }
  }
}

Label RuleClassifier::Classify(std::span<const ValueId> values) const {
  for (const Rule& rule : rules_) {
    bool match = true;
    for (const RuleAtom& a : rule.atoms) {
      if (values[a.feature] != a.value) {
        match = false;
        break;
      }
    }
    if (match) return rule.label;
  }
  return fallback_;
}

std::string RuleClassifier::Describe() const {
  return "rules(" + std::to_string(rules_.size()) + " rules, default " +
         std::to_string(ToInt(fallback_)) + ")";
}

MemoClassifier::MemoClassifier(ClassifierPtr inner)
    : Classifier(inner->schema_ptr()), inner_(std::move(inner)) {}

Label MemoClassifier::Classify(std::span<const ValueId> values) const {
  ValueVector key(values.begin(), values.end());
  {
    std::shared_lock lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) {
      ++cache_hits_;
      return it->second;
    }
  }
  Label label = inner_->Classify(values);
  ++backend_calls_;
  std::unique_lock lock(mu_);
  auto [it, inserted] = cache_.emplace(std::move(key), label);
  if (!inserted && it->second != label) {
    throw Error(ErrorCode::kNondeterminism,
                "classifier answered both 0 and 1 for " +
                    schema().Render(values));
  }
  return label;
}

std::string MemoClassifier::Describe() const {
  return "memo(" + inner_->Describe() + ")";
}

std::size_t MemoClassifier::cache_size() const {
  std::shared_lock lock(mu_);
  return cache_.size();
}

const Classifier& Unwrap(const Classifier& classifier) {
  const Classifier* c = &classifier;
  while (const auto* memo = dynamic_cast<const MemoClassifier*>(c)) {
    c = &memo->inner();
  }
  return *c;
}

}  // namespace cfx
