// Copyright 2026 The orsched Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace orsched {

// Exact arithmetic for penalties and objective values. Deadlines are small
// integers, so denominators stay far below the int64 range.
using Rational = boost::rational<std::int64_t>;

inline double ToDouble(const Rational& r) {
  return static_cast<double>(r.numerator()) /
         static_cast<double>(r.denominator());
}

// "n" for integers, "n/d" otherwise.
std::string ToString(const Rational& r);

// Inverse of ToString. Throws std::invalid_argument on malformed text.
Rational ParseRational(std::string_view text);

}  // namespace orsched
