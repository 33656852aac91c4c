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

#include "cfx/error.h"

#include <cctype>
#include <string>

#include "cfx/rational.h"

namespace cfx {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
      return "invalid-input";
    case ErrorCode::kParse:
      return "parse";
    case ErrorCode::kNothingToExplain:
      return "nothing-to-explain";
    case ErrorCode::kBackend:
      return "backend";
    case ErrorCode::kZeroMass:
      return "zero-mass";
    case ErrorCode::kPrecondition:
      return "precondition";
    case ErrorCode::kNondeterminism:
      return "nondeterminism";
  }
  return "unknown";
}

std::string FormatRational(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

double ToDouble(const Rational& r) { return r.convert_to<double>(); }

Rational ParseRational(const std::string& text) {
  auto fail = [&]() -> Rational {
    throw Error(ErrorCode::kParse, "not a number: '" + text + "'");
  };
  if (text.empty()) return fail();
  auto all_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  using boost::multiprecision::cpp_int;
  auto decimal = [](std::string_view s) {
    cpp_int v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
  };
  if (auto slash = text.find('/'); slash != std::string::npos) {
    std::string_view num(text.data(), slash);
    std::string_view den(text.data() + slash + 1, text.size() - slash - 1);
    if (!all_digits(num) || !all_digits(den)) return fail();
    cpp_int d = decimal(den);
    if (d == 0) return fail();
    return Rational(decimal(num), d);
  }
  auto dot = text.find('.');
  std::string_view whole(text.data(), dot == std::string::npos ? text.size() : dot);
  std::string_view frac;
  if (dot != std::string::npos) {
    frac = std::string_view(text.data() + dot + 1, text.size() - dot - 1);
  }
  if (whole.empty() && frac.empty()) return fail();
  if (!whole.empty() && !all_digits(whole)) return fail();
  if (!frac.empty() && !all_digits(frac)) return fail();
  cpp_int scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  return Rational(decimal(std::string(whole) + std::string(frac)), scale);
}

}  // namespace cfx
