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

#ifndef CFX_RATIONAL_H_
#define CFX_RATIONAL_H_

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cfx {

// Arbitrary-precision fraction used for scores and probabilities.
using Rational = boost::multiprecision::cpp_rational;

// "p/q" with q >= 1; zero renders as "0/1".
std::string FormatRational(const Rational& r);

// Accepts "p/q", integers and plain decimals ("0.25", ".5", "1e-3" is not
// accepted). Throws cfx::Error(kParse) on anything else.
Rational ParseRational(const std::string& text);

double ToDouble(const Rational& r);

}  // namespace cfx

#endif  // CFX_RATIONAL_H_
