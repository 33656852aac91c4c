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

#include "cfx/score.h"

#include <gtest/gtest.h>

#include "cfx/io.h"
#include "cfx/rule_dsl.h"
#include "oracle/brute_force.h"

namespace cfx {
namespace {

std::string Fixture(const std::string& name) {
  return io::ReadFile(std::string(CFX_FIXTURE_DIR) + "/" + name);
}

struct TableSetup {
  SchemaPtr schema = io::SchemaFromJson(Fixture("table1_schema.json"));
  ClassifierPtr table1 = io::TableFromCsv(schema, Fixture("table1.csv"));
  ClassifierPtr table2 = io::TableFromCsv(schema, Fixture("table2.csv"));
  Entity e1 = io::EntityFromJson(*schema, Fixture("table1_e1.json"));
};

std::vector<Rational> Scores(const RespReport& r) {
  std::vector<Rational> out;
  for (const auto& f : r.features) out.push_back(f.score);
  return out;
}

TEST(XResp, Table1) {
  TableSetup t;
  RespReport r = XResp(*t.table1, t.e1, {});
  EXPECT_EQ(Scores(r), (std::vector<Rational>{0, 1, 0}));
  EXPECT_TRUE(r.features[1].counterfactual_value_explanation());
  EXPECT_FALSE(r.features[0].actual_value_explanation());
  ASSERT_TRUE(r.features[1].witness.has_value());
  EXPECT_EQ(r.features[1].witness->counterfactual.values, (ValueVector{0, 0, 1}));
  EXPECT_FALSE(r.features[0].witness.has_value());
  EXPECT_TRUE(r.authoritative);
}

TEST(XResp, Table2) {
  TableSetup t;
  RespReport r = XResp(*t.table2, t.e1, {});
  EXPECT_EQ(Scores(r), (std::vector<Rational>{Rational(1, 2), 1, Rational(1, 2)}));
  EXPECT_TRUE(r.features[0].actual_value_explanation());
  EXPECT_FALSE(r.features[0].counterfactual_value_explanation());
  EXPECT_EQ(r.features[0].witness->FeatureSet(), (std::vector<std::size_t>{0, 2}));
}

TEST(XResp, MatchesOracleOnFixtures) {
  TableSetup t;
  for (const ClassifierPtr& c : {t.table1, t.table2}) {
    auto all = oracle::Counterfactuals(*c, t.e1.values);
    RespReport r = XResp(*c, t.e1, {});
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(r.features[i].score, oracle::XResp(all, i)) << c->Describe() << " F" << i + 1;
    }
  }
}

TEST(XResp, NoCounterfactualGivesZeros) {
  TableSetup t;
  auto rules = ParseRules("default 1", t.schema);
  RespReport r = XResp(*rules, t.e1, {});
  EXPECT_TRUE(r.no_counterfactual);
  EXPECT_EQ(Scores(r), (std::vector<Rational>{0, 0, 0}));
}

TEST(MaxResponsibility, Features) {
  TableSetup t;
  EXPECT_EQ(MaxResponsibilityFeatures(*t.table1, t.e1, {}).features,
            (std::vector<std::size_t>{1}));
  EXPECT_EQ(MaxResponsibilityFeatures(*t.table2, t.e1, {}).features,
            (std::vector<std::size_t>{1}));
  auto tennis = io::SchemaFromJson(Fixture("tennis_schema.json"));
  auto rules = ParseRules(Fixture("tennis.rules"), tennis);
  Entity e = io::EntityFromJson(*tennis, Fixture("tennis_e.json"));
  EXPECT_EQ(MaxResponsibilityFeatures(*rules, e, {}).features,
            (std::vector<std::size_t>{1}));
}

TEST(LocalResp, Table1UniformIsOneHalf) {
  TableSetup t;
  auto d = Distribution::Uniform(t.schema);
  EXPECT_EQ(LocalResp(*t.table1, *d, t.e1, 1, {}), Rational(1, 2));
  EXPECT_EQ(LocalResp(*t.table1, *d, t.e1, 0, {}), 0);
  // Gamma = {F1 := 1}: (1,1,1) keeps label 1; (1,0,1) flips, so 1/2 / 2.
  EXPECT_EQ(LocalResp(*t.table1, *d, t.e1, 1, Contingency{{0}, {1}}), Rational(1, 4));
}

ContingencyCondition ConditionOf(const Classifier& c, const Distribution& d,
                                 const Entity& e, std::size_t scored,
                                 const Contingency& g) {
  try {
    LocalResp(c, d, e, scored, g);
  } catch (const ContingencyError& err) {
    EXPECT_EQ(err.code(), ErrorCode::kPrecondition);
    return err.condition();
  }
  ADD_FAILURE() << "expected a contingency error";
  return ContingencyCondition::kScoredInGamma;
}

TEST(LocalResp, ContingencyConditions) {
  TableSetup t;
  auto d = Distribution::Uniform(t.schema);
  EXPECT_EQ(ConditionOf(*t.table1, *d, t.e1, 1, Contingency{{1}, {0}}),
            ContingencyCondition::kScoredInGamma);
  EXPECT_EQ(ConditionOf(*t.table1, *d, t.e1, 1, Contingency{{0}, {0}}),
            ContingencyCondition::kValueUnchanged);
  EXPECT_EQ(ConditionOf(*t.table1, *d, t.e1, 2, Contingency{{0, 1}, {1, 0}}),
            ContingencyCondition::kLabelChanged);

  auto single = std::make_shared<const FeatureSchema>(
      std::vector<Feature>{{"A", {"0", "1"}}, {"K", {"k"}}});
  auto rules = ParseRules("default 1", single);
  auto du = Distribution::Uniform(single);
  Entity e = MakeEntity(*single, "e", std::vector<std::string>{"0", "k"});
  EXPECT_EQ(ConditionOf(*rules, *du, e, 1, {}), ContingencyCondition::kNoAlternative);
}

TEST(LocalResp, InputErrors) {
  TableSetup t;
  auto d = Distribution::Uniform(t.schema);
  EXPECT_THROW(LocalResp(*t.table1, *d, t.e1, 5, {}), Error);
  EXPECT_THROW(LocalResp(*t.table1, *d, t.e1, 1, Contingency{{0}, {}}), Error);
  EXPECT_THROW(LocalResp(*t.table1, *d, t.e1, 1, Contingency{{0, 0}, {1, 1}}), Error);
  Entity e8 = io::EntityFromJson(*t.schema, Fixture("table1_e8.json"));
  try {
    LocalResp(*t.table1, *d, e8, 1, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNothingToExplain);
  }
}

TEST(LocalResp, EmpiricalZeroMass) {
  TableSetup t;
  auto d = Distribution::Empirical(t.schema, std::vector<ValueVector>{{0, 1, 1}});
  EXPECT_EQ(LocalResp(*t.table1, *d, t.e1, 1, {}), 0);
  try {
    LocalResp(*t.table1, *d, t.e1, 1, Contingency{{0}, {1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroMass);
  }
  GlobalResp g = GlobalRespScore(*t.table1, *d, t.e1, 1);
  EXPECT_EQ(g.score, 0);
  EXPECT_GT(g.zero_mass_skipped, 0u);
}

TEST(GlobalResp, Table1Uniform) {
  TableSetup t;
  auto d = Distribution::Uniform(t.schema);
  GlobalResp g = GlobalRespScore(*t.table1, *d, t.e1, 1);
  EXPECT_EQ(g.score, Rational(1, 2));
  ASSERT_TRUE(g.witness.has_value());
  EXPECT_TRUE(g.witness->features.empty());
  EXPECT_FALSE(g.truncated);
  // The original plus one flip of F2.
  EXPECT_EQ(g.classifier_calls, 2u);
}

TEST(GlobalResp, NeedsAContingency) {
  auto s = std::make_shared<const FeatureSchema>(
      std::vector<Feature>{{"F1", {"0", "1"}}, {"F2", {"0", "1"}}});
  auto rules = ParseRules("if F1=0 and F2=0 then 0\ndefault 1\n", s);
  Entity e = MakeEntity(*s, "e", std::vector<std::string>{"1", "1"});
  auto d = Distribution::Uniform(s);
  GlobalResp g = GlobalRespScore(*rules, *d, e, 0);
  EXPECT_EQ(g.score, Rational(1, 4));
  ASSERT_TRUE(g.witness.has_value());
  EXPECT_EQ(g.witness->features, (std::vector<std::size_t>{1}));
  EXPECT_EQ(g.witness->values, (std::vector<ValueId>{0}));

  GlobalRespConfig cap;
  cap.max_contingency = 0;
  GlobalResp capped = GlobalRespScore(*rules, *d, e, 0, cap);
  EXPECT_EQ(capped.score, 0);
  EXPECT_TRUE(capped.truncated);
}

TEST(GlobalResp, MatchesOracleUnderSeveralDistributions) {
  TableSetup t;
  auto marginals = io::MarginalsFromCsv(*t.schema, Fixture("table1_marginals.csv"));
  std::vector<std::pair<DistributionPtr, oracle::ProbFn>> dists;
  dists.push_back({Distribution::Uniform(t.schema), oracle::UniformProb(*t.schema)});
  dists.push_back({Distribution::Product(t.schema, marginals), oracle::ProductProb(marginals)});
  auto conditioned = Distribution::Conditioned(
      Distribution::Uniform(t.schema),
      io::ConstraintsFromJson(*t.schema, Fixture("condition_f2f3.json")).denials);
  dists.push_back({conditioned, [](const oracle::Point& p) {
                     return (p[1] == 0 && p[2] == 1) ? Rational(0) : Rational(1, 6);
                   }});
  for (const ClassifierPtr& c : {t.table1, t.table2}) {
    for (const auto& [d, prob] : dists) {
      for (std::size_t f = 0; f < 3; ++f) {
        GlobalResp g = GlobalRespScore(*c, *d, t.e1, f);
        oracle::OracleGlobal o = oracle::GlobalResp(*c, prob, t.e1.values, f);
        EXPECT_EQ(g.score, o.score) << c->Describe() << " " << d->Describe() << " F" << f + 1;
        if (o.gamma_size) {
          ASSERT_TRUE(g.witness.has_value());
          EXPECT_EQ(g.witness->features.size(), *o.gamma_size);
        } else {
          EXPECT_FALSE(g.witness.has_value());
        }
      }
    }
  }
}

}  // namespace
}  // namespace cfx
