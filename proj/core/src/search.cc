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

#include "cfx/search.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <stdexcept>
#include <thread>

#include "cfx/error.h"
#include "enumerate.h"

namespace cfx {
namespace {

using internal::AlterationCount;
using internal::ForEachAlteration;
using internal::ForEachCombination;

enum class Goal { kAll, kFirstLevel, kSubsetMinimal };

struct Outcome {
  std::vector<Explanation> hits;
  SearchStats stats;
  bool budget_hit = false;
  bool bound_hit = false;  // candidates beyond max_cardinality were skipped
  bool stopped_early = false;  // kFirstLevel found its level
};

Label ClassifyAttached(const Classifier& classifier,
                       std::span<const ValueId> values) {
  try {
    return classifier.Classify(values);
  } catch (const Error& e) {
    throw Error(e.code(), std::string(e.what()) + " [entity " +
                              classifier.schema().Render(values) + "]");
  }
}

std::vector<Label> ClassifyBatch(const Classifier& classifier,
                                 const std::vector<ValueVector>& batch,
                                 unsigned jobs) {
  std::vector<Label> labels(batch.size(), Label::kOne);
  if (jobs <= 1 || batch.size() < 2) {
    for (std::size_t i = 0; i < batch.size(); ++i) {
      labels[i] = ClassifyAttached(classifier, batch[i]);
    }
    return labels;
  }
  std::vector<std::exception_ptr> errors(batch.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= batch.size()) return;
      try {
        labels[i] = ClassifyAttached(classifier, batch[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  unsigned n = std::min<std::size_t>(jobs, batch.size());
  threads.reserve(n);
  for (unsigned t = 0; t < n; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return labels;
}

bool IsSuperset(const std::vector<std::size_t>& big,
                const std::vector<std::size_t>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::size_t EffectiveBound(const FeatureSchema& schema,
                           const SearchConfig& config) {
  return std::min(config.max_cardinality.value_or(schema.size()), schema.size());
}

void CheckOriginal(const Classifier& classifier, const Entity& entity,
                   const ConstraintSet& constraints, const SearchConfig& config,
                   SearchStats& stats) {
  const FeatureSchema& schema = classifier.schema();
  schema.CheckConforms(entity.values);
  constraints.Validate(schema);
  config.Validate(schema);
  Label label = ClassifyAttached(classifier, entity.values);
  ++stats.classifier_calls;
  if (label != Label::kOne) {
    throw Error(ErrorCode::kNothingToExplain,
                "nothing to explain: entity '" + entity.id + "' (" +
                    schema.Render(entity.values) + ") is labeled 0");
  }
}

Outcome RunLevelwise(const Classifier& classifier, const Entity& entity,
                     const ConstraintSet& constraints,
                     const SearchConfig& config, Goal goal) {
  const FeatureSchema& schema = classifier.schema();
  Outcome out;
  CheckOriginal(classifier, entity, constraints, config, out.stats);
  const std::size_t n = schema.size();
  const std::size_t bound = EffectiveBound(schema, config);
  std::vector<std::vector<std::size_t>> found_sets;

  for (std::size_t k = 1; k <= bound; ++k) {
    out.stats.levels_explored = k;
    std::vector<ValueVector> batch;
    ForEachCombination(n, k, [&](const std::vector<std::size_t>& combo) {
      if (goal == Goal::kSubsetMinimal) {
        for (const auto& s : found_sets) {
          if (IsSuperset(combo, s)) {
            out.stats.pruned += AlterationCount(schema, combo);
            return;
          }
        }
      }
      ForEachAlteration(schema, entity.values, combo, [&](const ValueVector& p) {
        if (Admissible(schema, constraints, entity.values, p)) {
          batch.push_back(p);
        } else {
          ++out.stats.inadmissible;
        }
      });
    });
    if (config.budget) {
      std::uint64_t left = *config.budget > out.stats.classifier_calls
                               ? *config.budget - out.stats.classifier_calls
                               : 0;
      if (batch.size() > left) {
        batch.resize(left);
        out.budget_hit = true;
      }
    }
    auto labels = ClassifyBatch(classifier, batch, config.jobs);
    out.stats.classifier_calls += batch.size();
    bool level_hit = false;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (labels[i] != Label::kZero) continue;
      level_hit = true;
      Entity cf{entity.id, batch[i]};
      out.hits.push_back(Diff(schema, entity, cf));
      if (goal == Goal::kSubsetMinimal) {
        auto fs = out.hits.back().FeatureSet();
        if (std::find(found_sets.begin(), found_sets.end(), fs) ==
            found_sets.end()) {
          found_sets.push_back(std::move(fs));
        }
      }
    }
    if (out.budget_hit) return out;
    if (goal == Goal::kFirstLevel && level_hit) {
      out.stopped_early = true;
      return out;
    }
  }
  out.bound_hit = bound < n;
  return out;
}

Outcome RunExhaustive(const Classifier& classifier, const Entity& entity,
                      const ConstraintSet& constraints,
                      const SearchConfig& config) {
  const FeatureSchema& schema = classifier.schema();
  Outcome out;
  CheckOriginal(classifier, entity, constraints, config, out.stats);
  const std::size_t bound = EffectiveBound(schema, config);
  std::vector<ValueVector> batch;
  ForEachPoint(schema, [&](const ValueVector& p) {
    std::size_t d = HammingDistance(p, entity.values);
    if (d == 0) return true;
    if (d > bound) {
      out.bound_hit = true;
      return true;
    }
    batch.push_back(p);
    return true;
  });
  if (config.budget) {
    std::uint64_t left = *config.budget - std::min(*config.budget, out.stats.classifier_calls);
    if (batch.size() > left) {
      batch.resize(left);
      out.budget_hit = true;
    }
  }
  auto labels = ClassifyBatch(classifier, batch, config.jobs);
  out.stats.classifier_calls += batch.size();
  out.stats.levels_explored = bound;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (labels[i] != Label::kZero) continue;
    if (!Admissible(schema, constraints, entity.values, batch[i])) {
      ++out.stats.inadmissible;
      continue;
    }
    out.hits.push_back(Diff(schema, entity, Entity{entity.id, batch[i]}));
  }
  std::sort(out.hits.begin(), out.hits.end(), GenerationOrderLess);
  return out;
}

Outcome Run(const Classifier& classifier, const Entity& entity,
            const ConstraintSet& constraints, const SearchConfig& config,
            Goal goal) {
  if (config.mode == SearchMode::kExhaustiveOracle) {
    return RunExhaustive(classifier, entity, constraints, config);
  }
  return RunLevelwise(classifier, entity, constraints, config, goal);
}

std::vector<bool> SubsetMinimalFlags(const std::vector<Explanation>& xs) {
  std::vector<std::vector<std::size_t>> sets;
  sets.reserve(xs.size());
  for (const auto& x : xs) sets.push_back(x.FeatureSet());
  std::vector<bool> flags(xs.size(), true);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size() && flags[i]; ++j) {
      if (sets[j].size() < sets[i].size() && IsSuperset(sets[i], sets[j])) {
        flags[i] = false;
      }
    }
  }
  return flags;
}

}  // namespace

void SearchConfig::Validate(const FeatureSchema& schema) const {
  if (max_cardinality && *max_cardinality > schema.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "max cardinality " + std::to_string(*max_cardinality) +
                    " exceeds the feature count " +
                    std::to_string(schema.size()));
  }
  if (budget && *budget < 1) {
    throw Error(ErrorCode::kInvalidInput, "budget must be at least 1");
  }
}

std::optional<std::size_t> SearchResult::min_cardinality() const {
  std::optional<std::size_t> m;
  for (const auto& x : counterfactuals) {
    if (!m || x.cardinality() < *m) m = x.cardinality();
  }
  return m;
}

bool GenerationOrderLess(const Explanation& a, const Explanation& b) {
  if (a.cardinality() != b.cardinality()) {
    return a.cardinality() < b.cardinality();
  }
  auto fa = a.FeatureSet();
  auto fb = b.FeatureSet();
  if (fa != fb) return fa < fb;
  return a.counterfactual.values < b.counterfactual.values;
}

void MarkMinimal(SearchResult& result) {
  result.s_minimal = SubsetMinimalFlags(result.counterfactuals);
  result.c_minimal.assign(result.counterfactuals.size(), false);
  auto m = result.min_cardinality();
  for (std::size_t i = 0; i < result.counterfactuals.size(); ++i) {
    result.c_minimal[i] = result.counterfactuals[i].cardinality() == *m;
    if (result.c_minimal[i] && !result.s_minimal[i]) {
      throw std::logic_error("c-minimal explanation that is not s-minimal");
    }
  }
}

SearchResult EnumerateCounterfactuals(const Classifier& classifier,
                                      const Entity& entity,
                                      const ConstraintSet& constraints,
                                      const SearchConfig& config) {
  Outcome o = Run(classifier, entity, constraints, config, Goal::kAll);
  SearchResult r;
  r.original = entity;
  r.counterfactuals = std::move(o.hits);
  r.stats = o.stats;
  r.exhausted = !o.budget_hit && !o.bound_hit;
  MarkMinimal(r);
  return r;
}

ExplanationList CExplanations(const Classifier& classifier,
                              const Entity& entity,
                              const ConstraintSet& constraints,
                              const SearchConfig& config) {
  Outcome o = Run(classifier, entity, constraints, config, Goal::kFirstLevel);
  ExplanationList out;
  out.stats = o.stats;
  std::optional<std::size_t> best;
  for (const auto& x : o.hits) {
    if (!best || x.cardinality() < *best) best = x.cardinality();
  }
  for (auto& x : o.hits) {
    if (x.cardinality() == *best) out.explanations.push_back(std::move(x));
  }
  // A budget cut inside or before the winning level may hide ties or a
  // closer counterfactual; a bare cardinality bound only matters when
  // nothing was found.
  out.authoritative = !o.budget_hit && (best.has_value() || !o.bound_hit);
  return out;
}

ExplanationList SExplanations(const Classifier& classifier,
                              const Entity& entity,
                              const ConstraintSet& constraints,
                              const SearchConfig& config) {
  Outcome o = Run(classifier, entity, constraints, config, Goal::kSubsetMinimal);
  ExplanationList out;
  out.stats = o.stats;
  auto flags = SubsetMinimalFlags(o.hits);
  for (std::size_t i = 0; i < o.hits.size(); ++i) {
    if (flags[i]) out.explanations.push_back(std::move(o.hits[i]));
  }
  out.authoritative = !o.budget_hit && !o.bound_hit;
  return out;
}

}  // namespace cfx
