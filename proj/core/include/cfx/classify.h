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

#ifndef CFX_CLASSIFY_H_
#define CFX_CLASSIFY_H_

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "cfx/schema.h"

namespace cfx {

enum class Label : std::uint8_t { kZero = 0, kOne = 1 };

inline int ToInt(Label l) { return static_cast<int>(l); }
inline Label LabelFromInt(int v) { return v == 0 ? Label::kZero : Label::kOne; }

using SchemaPtr = std::shared_ptr<const FeatureSchema>;

// A binary label function over a schema's product space.
//
// Implementations must be safe to call from several threads at once; the
// external backend serializes internally.
class Classifier {
 public:
  explicit Classifier(SchemaPtr schema) : schema_(std::move(schema)) {}
  virtual ~Classifier() = default;

  Classifier(const Classifier&) = delete;
  Classifier& operator=(const Classifier&) = delete;

  const FeatureSchema& schema() const { return *schema_; }
  const SchemaPtr& schema_ptr() const { return schema_; }

  // `values` must conform to schema(); backends may throw Error(kBackend).
  virtual Label Classify(std::span<const ValueId> values) const = 0;

  virtual std::string Describe() const = 0;

 private:
  SchemaPtr schema_;
};

using ClassifierPtr = std::shared_ptr<const Classifier>;

// Conformance-checked entry point.
Label Classify(const Classifier& classifier, const Entity& entity);

// Explicit input/output relation. Partial tables are legal; querying a
// missing row throws Error(kBackend).
class TableClassifier : public Classifier {
 public:
  struct Row {
    ValueVector values;
    Label label;
  };

  // Rows keep their given order (the ASP emitter prints them that way).
  // Throws Error(kInvalidInput) on non-conforming or repeated keys.
  TableClassifier(SchemaPtr schema, std::vector<Row> rows);

  Label Classify(std::span<const ValueId> values) const override;
  std::string Describe() const override;

  const std::vector<Row>& rows() const { return rows_; }
  bool IsTotal() const;
  std::uint64_t covered() const { return rows_.size(); }

 private:
  std::vector<Row> rows_;
  std::map<ValueVector, Label> lookup_;
};

struct RuleAtom {
  std::size_t feature = 0;
  ValueId value = 0;
};

struct Rule {
  std::vector<RuleAtom> atoms;  // conjunction, in source order
  Label label = Label::kOne;
};

// Ordered rule list with first-match-wins semantics and a mandatory default.
class RuleClassifier : public Classifier {
 public:
  RuleClassifier(SchemaPtr schema, std::vector<Rule> rules, Label fallback);

  Label Classify(std::span<const ValueId> values) const override;
  std::string Describe() const override;

  const std::vector<Rule>& rules() const { return rules_; }
  Label fallback() const { return fallback_; }

 private:
  std::vector<Rule> rules_;
  Label fallback_;
};

// Caches labels by value vector. The cache is shared between threads; a
// second, different answer for a cached vector raises Error(kNondeterminism).
class MemoClassifier : public Classifier {
 public:
  explicit MemoClassifier(ClassifierPtr inner);

  Label Classify(std::span<const ValueId> values) const override;
  std::string Describe() const override;

  const Classifier& inner() const { return *inner_; }
  std::uint64_t backend_calls() const { return backend_calls_.load(); }
  std::uint64_t cache_hits() const { return cache_hits_.load(); }
  std::size_t cache_size() const;

 private:
  ClassifierPtr inner_;
  mutable std::shared_mutex mu_;
  mutable std::map<ValueVector, Label> cache_;
  mutable std::atomic<std::uint64_t> backend_calls_{0};
  mutable std::atomic<std::uint64_t> cache_hits_{0};
};

// Unwraps MemoClassifier layers.
const Classifier& Unwrap(const Classifier& classifier);

// Visits every vector of the product space in lexicographic order of value
// positions (last feature fastest). Stops early when `fn` returns false.
template <typename Fn>
void ForEachPoint(const FeatureSchema& schema, Fn&& fn) {
  ValueVector point(schema.size(), 0);
  while (true) {
    if (!fn(static_cast<const ValueVector&>(point))) return;
    std::size_t i = schema.size();
    while (true) {
      if (i == 0) return;
      --i;
      if (++point[i] < schema.domain_size(i)) break;
      point[i] = 0;
    }
  }
}

}  // namespace cfx

#endif  // CFX_CLASSIFY_H_
