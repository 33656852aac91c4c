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

#include "oracle/property_check.h"

#include <gtest/gtest.h>

#include <chrono>

namespace cfx {
namespace {

TEST(Property, SearchAndScoresMatchTheOracle) {
  auto t0 = std::chrono::steady_clock::now();
  oracle::PropertyReport r = oracle::RunPropertyCheck(250, 20260416);
  auto elapsed = std::chrono::steady_clock::now() - t0;
  EXPECT_EQ(r.trials, 250);
  EXPECT_EQ(r.mismatches, 0);
  for (const auto& f : r.failures) ADD_FAILURE() << f;
  EXPECT_LT(elapsed, std::chrono::seconds(60));
}

TEST(Property, SeveralSeeds) {
  for (std::uint32_t seed : {1u, 2u, 3u, 4u}) {
    oracle::PropertyReport r = oracle::RunPropertyCheck(60, seed);
    EXPECT_EQ(r.mismatches, 0) << "seed " << seed;
    for (const auto& f : r.failures) ADD_FAILURE() << f;
  }
}

}  // namespace
}  // namespace cfx
