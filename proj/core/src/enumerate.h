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

#ifndef CFX_SRC_ENUMERATE_H_
#define CFX_SRC_ENUMERATE_H_

#include <cstdint>
#include <vector>

#include "cfx/schema.h"

namespace cfx::internal {

// Calls `fn(combo)` for every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void ForEachCombination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> combo(k);
  for (std::size_t i = 0; i < k; ++i) combo[i] = i;
  while (true) {
    fn(static_cast<const std::vector<std::size_t>&>(combo));
    std::size_t i = k;
    while (i > 0 && combo[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++combo[i - 1];
    for (std::size_t j = i; j < k; ++j) combo[j] = combo[j - 1] + 1;
  }
}

// Calls `fn(point)` for each way of moving every feature in `combo` to a value
// different from `original`'s, in lexicographic order of value positions.
template <typename Fn>
void ForEachAlteration(const FeatureSchema& schema, const ValueVector& original,
                       const std::vector<std::size_t>& combo, Fn&& fn) {
  for (std::size_t f : combo) {
    if (schema.domain_size(f) < 2) return;
  }
  auto first_alt = [&](std::size_t f) -> ValueId {
    return original[f] == 0 ? 1 : 0;
  };
  ValueVector point = original;
  for (std::size_t f : combo) point[f] = first_alt(f);
  while (true) {
    fn(static_cast<const ValueVector&>(point));
    std::size_t i = combo.size();
    while (true) {
      if (i == 0) return;
      --i;
      std::size_t f = combo[i];
      ValueId v = point[f] + 1;
      if (v == original[f]) ++v;
      if (v < schema.domain_size(f)) {
        point[f] = v;
        break;
      }
      point[f] = first_alt(f);
    }
  }
}

inline std::uint64_t AlterationCount(const FeatureSchema& schema,
                              const std::vector<std::size_t>& combo) {
  std::uint64_t n = 1;
  for (std::size_t f : combo) n *= schema.domain_size(f) - 1;
  return n;
}

}  // namespace cfx::internal

#endif  // CFX_SRC_ENUMERATE_H_
