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

#include <benchmark/benchmark.h>

#include "cfx/distribution.h"
#include "cfx/rule_dsl.h"
#include "cfx/score.h"

namespace {

cfx::SchemaPtr Schema(std::size_t n, std::size_t d) {
  std::vector<cfx::Feature> f;
  for (std::size_t i = 0; i < n; ++i) {
    cfx::Feature feature{"F" + std::to_string(i + 1), {}};
    for (std::size_t v = 0; v < d; ++v) feature.domain.push_back("v" + std::to_string(v));
    f.push_back(std::move(feature));
  }
  return std::make_shared<const cfx::FeatureSchema>(std::move(f));
}

void BM_GlobalRespUniform(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto schema = Schema(n, 3);
  auto rules = cfx::ParseRules("if F1=v2 and F2=v2 then 0\ndefault 1\n", schema);
  auto d = cfx::Distribution::Uniform(schema);
  cfx::Entity e{"e", cfx::ValueVector(n, 0)};
  for (auto _ : state) {
    auto g = cfx::GlobalRespScore(*rules, *d, e, 0);
    benchmark::DoNotOptimize(g.score);
  }
}
BENCHMARK(BM_GlobalRespUniform)->Arg(3)->Arg(5)->Arg(7);

void BM_XResp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto schema = Schema(n, 2);
  auto rules = cfx::ParseRules("if F1=v0 and F2=v0 then 1\nif F3=v0 then 1\ndefault 0\n", schema);
  cfx::Entity e{"e", cfx::ValueVector(n, 0)};
  for (auto _ : state) {
    auto r = cfx::XResp(*rules, e, {});
    benchmark::DoNotOptimize(r.features.size());
  }
}
BENCHMARK(BM_XResp)->Arg(4)->Arg(8)->Arg(12);

}  // namespace
