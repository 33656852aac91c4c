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

#include <gtest/gtest.h>

#include <set>

#include "cfx/error.h"
#include "cfx/io.h"
#include "cfx/rule_dsl.h"
#include "oracle/brute_force.h"

namespace cfx {
namespace {

std::string Fixture(const std::string& name) {
  return io::ReadFile(std::string(CFX_FIXTURE_DIR) + "/" + name);
}

struct Case {
  SchemaPtr schema;
  ClassifierPtr classifier;
  Entity entity;
};

Case Table(const std::string& csv) {
  Case s;
  s.schema = io::SchemaFromJson(Fixture("table1_schema.json"));
  s.classifier = io::TableFromCsv(s.schema, Fixture(csv));
  s.entity = io::EntityFromJson(*s.schema, Fixture("table1_e1.json"));
  return s;
}

Case TennisSetup() {
  Case s;
  s.schema = io::SchemaFromJson(Fixture("tennis_schema.json"));
  s.classifier = ParseRules(Fixture("tennis.rules"), s.schema);
  s.entity = io::EntityFromJson(*s.schema, Fixture("tennis_e.json"));
  return s;
}

std::set<ValueVector> Points(const std::vector<Explanation>& xs) {
  std::set<ValueVector> out;
  for (const auto& x : xs) out.insert(x.counterfactual.values);
  return out;
}

std::set<ValueVector> Points(const std::vector<oracle::OracleCounterfactual>& xs) {
  std::set<ValueVector> out;
  for (const auto& x : xs) out.insert(x.point);
  return out;
}

std::set<ValueVector> Flagged(const SearchResult& r, const std::vector<bool>& flags) {
  std::set<ValueVector> out;
  for (std::size_t i = 0; i < r.counterfactuals.size(); ++i) {
    if (flags[i]) out.insert(r.counterfactuals[i].counterfactual.values);
  }
  return out;
}

void ExpectMatchesOracle(const Case& s, const ConstraintSet& cs = {}) {
  oracle::Admissible adm = [&](const oracle::Point& o, const oracle::Point& p) {
    return Admissible(*s.schema, cs, o, p);
  };
  auto all = oracle::Counterfactuals(*s.classifier, s.entity.values, adm);
  for (SearchMode mode : {SearchMode::kLevelwise, SearchMode::kExhaustiveOracle}) {
    SearchConfig cfg;
    cfg.mode = mode;
    SearchResult r = EnumerateCounterfactuals(*s.classifier, s.entity, cs, cfg);
    EXPECT_TRUE(r.exhausted);
    EXPECT_EQ(Points(r.counterfactuals), Points(all));
    EXPECT_EQ(Flagged(r, r.s_minimal), Points(oracle::SMinimal(all)));
    EXPECT_EQ(Flagged(r, r.c_minimal), Points(oracle::CMinimal(all)));
    EXPECT_EQ(Points(SExplanations(*s.classifier, s.entity, cs, cfg).explanations),
              Points(oracle::SMinimal(all)));
    EXPECT_EQ(Points(CExplanations(*s.classifier, s.entity, cs, cfg).explanations),
              Points(oracle::CMinimal(all)));
  }
}

TEST(Search, Table1) {
  Case s = Table("table1.csv");
  SearchResult r = EnumerateCounterfactuals(*s.classifier, s.entity, {});
  ASSERT_EQ(r.counterfactuals.size(), 3u);
  // Generation order: e7 {F2}, e4 {F1,F2}, e8 {F2,F3}.
  EXPECT_EQ(r.counterfactuals[0].counterfactual.values, (ValueVector{0, 0, 1}));
  EXPECT_EQ(r.counterfactuals[1].counterfactual.values, (ValueVector{1, 0, 1}));
  EXPECT_EQ(r.counterfactuals[2].counterfactual.values, (ValueVector{0, 0, 0}));
  EXPECT_EQ(r.s_minimal, (std::vector<bool>{true, false, false}));
  EXPECT_EQ(r.c_minimal, (std::vector<bool>{true, false, false}));
  EXPECT_EQ(r.min_cardinality(), 1u);
  EXPECT_EQ(r.stats.classifier_calls, 8u);
  ExpectMatchesOracle(s);
}

TEST(Search, Table2SMinimalIsNotCMinimal) {
  Case s = Table("table2.csv");
  SearchResult r = EnumerateCounterfactuals(*s.classifier, s.entity, {});
  ASSERT_EQ(r.counterfactuals.size(), 3u);
  EXPECT_EQ(Flagged(r, r.s_minimal),
            (std::set<ValueVector>{{0, 0, 1}, {1, 1, 0}}));
  EXPECT_EQ(Flagged(r, r.c_minimal), (std::set<ValueVector>{{0, 0, 1}}));
  ExplanationList sx = SExplanations(*s.classifier, s.entity, {});
  ASSERT_EQ(sx.explanations.size(), 2u);
  EXPECT_EQ(sx.explanations[1].FeatureSet(), (std::vector<std::size_t>{0, 2}));
  // {F1,F2}, {F2,F3} and {F1,F2,F3} are skipped as supersets of {F2}.
  EXPECT_EQ(sx.stats.pruned, 3u);
  ExpectMatchesOracle(s);
}

TEST(Search, TennisWithAndWithoutDenial) {
  Case s = TennisSetup();
  SearchResult r = EnumerateCounterfactuals(*s.classifier, s.entity, {});
  EXPECT_EQ(r.counterfactuals.size(), 4u);
  ExplanationList c = CExplanations(*s.classifier, s.entity, {});
  ASSERT_EQ(c.explanations.size(), 1u);
  EXPECT_EQ(s.schema->Render(c.explanations[0].counterfactual.values), "sunny,high,weak");
  EXPECT_EQ(c.stats.classifier_calls, 1u + 4u);
  ExpectMatchesOracle(s);

  ConstraintSet cs = io::ConstraintsFromJson(*s.schema, Fixture("rainstrong.json"));
  SearchResult rc = EnumerateCounterfactuals(*s.classifier, s.entity, cs);
  std::set<std::string> rendered;
  for (const auto& x : rc.counterfactuals) {
    rendered.insert(s.schema->Render(x.counterfactual.values));
  }
  EXPECT_EQ(rendered, (std::set<std::string>{"sunny,high,weak", "sunny,high,strong"}));
  EXPECT_GT(rc.stats.inadmissible, 0u);
  ExpectMatchesOracle(s, cs);
}

TEST(Search, ActionabilityToy) {
  auto schema = std::make_shared<const FeatureSchema>(std::vector<Feature>{
      {"Age", {"young", "middle", "old"}, true}, {"Income", {"low", "high"}}});
  auto rules = ParseRules(
      "if Age=middle and Income=low then 1\n"
      "if Age=old and Income=low then 1\n"
      "default 0\n",
      schema);
  Case s{schema, rules, MakeEntity(*schema, "e", std::vector<std::string>{"middle", "low"})};
  ConstraintSet up;
  up.actionability.push_back({0, ActionMode::kIncreaseOnly});
  ExpectMatchesOracle(s);
  ExpectMatchesOracle(s, up);
  SearchResult r = EnumerateCounterfactuals(*rules, s.entity, up);
  for (const auto& x : r.counterfactuals) EXPECT_GE(x.counterfactual.values[0], 1u);
  ConstraintSet fixed;
  fixed.actionability.push_back({1, ActionMode::kFixed});
  SearchResult none = EnumerateCounterfactuals(*rules, s.entity, fixed);
  EXPECT_EQ(Points(none.counterfactuals), (std::set<ValueVector>{{0, 0}}));
}

class ConstantOne : public Classifier {
 public:
  using Classifier::Classifier;
  Label Classify(std::span<const ValueId>) const override { return Label::kOne; }
  std::string Describe() const override { return "one"; }
};

TEST(Search, ConstantOneHasNoCounterfactual) {
  Case s = Table("table1.csv");
  ConstantOne one(s.schema);
  SearchResult r = EnumerateCounterfactuals(one, s.entity, {});
  EXPECT_FALSE(r.has_counterfactual());
  EXPECT_TRUE(r.exhausted);
  EXPECT_FALSE(r.min_cardinality().has_value());
  ExplanationList c = CExplanations(one, s.entity, {});
  EXPECT_TRUE(c.no_counterfactual());
  EXPECT_TRUE(c.authoritative);
  EXPECT_EQ(c.stats.classifier_calls, 8u);
}

TEST(Search, OriginalLabeledZero) {
  Case s = Table("table1.csv");
  Entity e8 = io::EntityFromJson(*s.schema, Fixture("table1_e8.json"));
  try {
    EnumerateCounterfactuals(*s.classifier, e8, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNothingToExplain);
  }
}

TEST(Search, CallCountWithinLevelBound) {
  Case s = TennisSetup();
  for (std::size_t k = 1; k <= 3; ++k) {
    SearchConfig cfg;
    cfg.max_cardinality = k;
    SearchResult r = EnumerateCounterfactuals(*s.classifier, s.entity, {}, cfg);
    // 1 + sum over j <= k of the number of points at Hamming distance j.
    std::uint64_t bound = 1;
    for (const auto& p : oracle::AllPoints(*s.schema)) {
      std::size_t d = oracle::Differing(s.entity.values, p).size();
      if (d >= 1 && d <= k) ++bound;
    }
    EXPECT_LE(r.stats.classifier_calls, bound);
    EXPECT_EQ(r.exhausted, k == 3);
    for (const auto& x : r.counterfactuals) EXPECT_LE(x.cardinality(), k);
  }
}

TEST(Search, BudgetTruncates) {
  Case s = Table("table1.csv");
  SearchConfig cfg;
  cfg.budget = 2;
  SearchResult r = EnumerateCounterfactuals(*s.classifier, s.entity, {}, cfg);
  EXPECT_EQ(r.stats.classifier_calls, 2u);
  EXPECT_FALSE(r.exhausted);
  EXPECT_TRUE(r.counterfactuals.empty());
  cfg.budget = 3;
  ExplanationList c = CExplanations(*s.classifier, s.entity, {}, cfg);
  EXPECT_EQ(c.explanations.size(), 1u);
  EXPECT_FALSE(c.authoritative);
  cfg.budget = 0;
  EXPECT_THROW(EnumerateCounterfactuals(*s.classifier, s.entity, {}, cfg), Error);
}

TEST(Search, MaxCardinalityAboveFeatureCountIsInvalid) {
  Case s = Table("table1.csv");
  SearchConfig cfg;
  cfg.max_cardinality = 4;
  EXPECT_THROW(EnumerateCounterfactuals(*s.classifier, s.entity, {}, cfg), Error);
}

TEST(Search, ParallelMatchesSerial) {
  Case s = TennisSetup();
  SearchConfig serial;
  SearchConfig parallel;
  parallel.jobs = 4;
  SearchResult a = EnumerateCounterfactuals(*s.classifier, s.entity, {}, serial);
  SearchResult b = EnumerateCounterfactuals(*s.classifier, s.entity, {}, parallel);
  EXPECT_EQ(a.counterfactuals, b.counterfactuals);
  EXPECT_EQ(a.stats.classifier_calls, b.stats.classifier_calls);
}

TEST(Search, LevelwiseAndExhaustiveAgreeOnOrder) {
  for (const char* csv : {"table1.csv", "table2.csv"}) {
    Case s = Table(csv);
    SearchConfig ex;
    ex.mode = SearchMode::kExhaustiveOracle;
    SearchResult a = EnumerateCounterfactuals(*s.classifier, s.entity, {});
    SearchResult b = EnumerateCounterfactuals(*s.classifier, s.entity, {}, ex);
    EXPECT_EQ(a.counterfactuals, b.counterfactuals);
    EXPECT_EQ(a.s_minimal, b.s_minimal);
    EXPECT_EQ(a.c_minimal, b.c_minimal);
  }
}

}  // namespace
}  // namespace cfx
