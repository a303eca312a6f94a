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

#include "orsched/core/rational.hpp"

#include <charconv>
#include <stdexcept>
#include <string>

namespace orsched {
namespace {

std::int64_t ParseInt(std::string_view text) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) +
                                "'");
  }
  return value;
}

}  // namespace

std::string ToString(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational ParseRational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(ParseInt(text));
  const std::int64_t den = ParseInt(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Rational(ParseInt(text.substr(0, slash)), den);
}

}  // namespace orsched
