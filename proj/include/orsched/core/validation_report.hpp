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

#include <string>
#include <vector>

namespace orsched {

struct Violation {
  std::string family;      // constraint family tag, e.g. "capacity"
  std::vector<int> index;  // index tuple of the broken row
  std::string message;
  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;

  bool ok() const { return violations.empty(); }
  void Add(std::string family, std::vector<int> index, std::string message) {
    violations.push_back({std::move(family), std::move(index),
                          std::move(message)});
  }
  void Merge(const ValidationReport& other) {
    violations.insert(violations.end(), other.violations.begin(),
                      other.violations.end());
    warnings.insert(warnings.end(), other.warnings.begin(),
                    other.warnings.end());
  }
  bool HasFamily(const std::string& family) const {
    for (const Violation& v : violations) {
      if (v.family == family) return true;
    }
    return false;
  }
  bool operator==(const ValidationReport&) const = default;
};

}  // namespace orsched
