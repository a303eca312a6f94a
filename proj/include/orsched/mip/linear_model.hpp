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
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace orsched {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { kLe, kEq, kGe };

// Sparse linear expression. Duplicate columns are merged by AddRow.
using LinearTerms = std::vector<std::pair<int, double>>;

// Identifies a row by its constraint family and index tuple, e.g.
// {"assign_once", {i}} or {"bar_capacity", {j, d, h, w, l}}.
struct RowTag {
  std::string family;
  std::vector<int> index;
  bool operator==(const RowTag&) const = default;
};

struct RowViolation {
  int row = 0;
  double activity = 0;
  double excess = 0;
};

// Minimization MILP in row-wise CSR form.
class LinearModel {
 public:
  int AddVariable(std::string name, double lower, double upper, bool integer);
  int AddBinary(std::string name) { return AddVariable(std::move(name), 0, 1, true); }
  int AddContinuous(std::string name, double lower = 0, double upper = kInf) {
    return AddVariable(std::move(name), lower, upper, false);
  }

  // Zero coefficients are dropped after merging. A row whose expression
  // becomes empty is still stored.
  int AddRow(LinearTerms terms, Sense sense, double rhs, RowTag tag);

  void SetObjective(std::vector<double> costs, double offset);
  void SetBounds(int column, double lower, double upper);

  int num_columns() const { return static_cast<int>(lower_.size()); }
  int num_rows() const { return static_cast<int>(row_lower_.size()); }
  std::int64_t num_nonzeros() const {
    return static_cast<std::int64_t>(indices_.size());
  }

  const std::vector<double>& column_lower() const { return lower_; }
  const std::vector<double>& column_upper() const { return upper_; }
  const std::vector<char>& integrality() const { return integer_; }
  const std::vector<double>& costs() const { return costs_; }
  double offset() const { return offset_; }
  const std::vector<double>& row_lower() const { return row_lower_; }
  const std::vector<double>& row_upper() const { return row_upper_; }
  const std::vector<std::int64_t>& row_starts() const { return starts_; }
  const std::vector<int>& indices() const { return indices_; }
  const std::vector<double>& values() const { return values_; }
  const std::string& column_name(int column) const { return names_[column]; }
  const RowTag& row_tag(int row) const { return tags_[row]; }

  // Rows per family, in first-appearance order.
  std::vector<std::pair<std::string, int>> FamilyCounts() const;

  double Activity(int row, const std::vector<double>& x) const;
  double ObjectiveValue(const std::vector<double>& x) const;
  // Smallest objective value the column bounds allow; -inf when unbounded.
  double ObjectiveFloor() const;

  // Rows and bounds broken by more than `tolerance`; columns are reported
  // with row = -1 - column. Integrality is checked with the same tolerance.
  std::vector<RowViolation> Violations(const std::vector<double>& x,
                                       double tolerance = 1e-6) const;

  // CPLEX LP text format.
  void WriteLp(std::ostream& out) const;

 private:
  std::vector<std::string> names_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<char> integer_;
  std::vector<double> costs_;
  double offset_ = 0;

  std::vector<std::int64_t> starts_{0};
  std::vector<int> indices_;
  std::vector<double> values_;
  std::vector<double> row_lower_;
  std::vector<double> row_upper_;
  std::vector<RowTag> tags_;
};

}  // namespace orsched
