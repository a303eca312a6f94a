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

#include "orsched/mip/linear_model.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace orsched {

int LinearModel::AddVariable(std::string name, double lower, double upper,
                             bool integer) {
  names_.push_back(std::move(name));
  lower_.push_back(lower);
  upper_.push_back(upper);
  integer_.push_back(integer ? 1 : 0);
  costs_.push_back(0);
  return num_columns() - 1;
}

int LinearModel::AddRow(LinearTerms terms, Sense sense, double rhs,
                        RowTag tag) {
  std::sort(terms.begin(), terms.end());
  std::size_t out = 0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (terms[k].first < 0 || terms[k].first >= num_columns()) {
      throw std::out_of_range("row '" + tag.family + "' references column " +
                              std::to_string(terms[k].first));
    }
    if (out > 0 && terms[out - 1].first == terms[k].first) {
      terms[out - 1].second += terms[k].second;
    } else {
      terms[out++] = terms[k];
    }
  }
  terms.resize(out);
  for (const auto& [column, coef] : terms) {
    if (coef == 0) continue;
    indices_.push_back(column);
    values_.push_back(coef);
  }
  starts_.push_back(static_cast<std::int64_t>(indices_.size()));
  row_lower_.push_back(sense == Sense::kLe ? -kInf : rhs);
  row_upper_.push_back(sense == Sense::kGe ? kInf : rhs);
  tags_.push_back(std::move(tag));
  return num_rows() - 1;
}

void LinearModel::SetObjective(std::vector<double> costs, double offset) {
  if (static_cast<int>(costs.size()) != num_columns()) {
    throw std::invalid_argument("objective size differs from column count");
  }
  costs_ = std::move(costs);
  offset_ = offset;
}

void LinearModel::SetBounds(int column, double lower, double upper) {
  lower_.at(column) = lower;
  upper_.at(column) = upper;
}

std::vector<std::pair<std::string, int>> LinearModel::FamilyCounts() const {
  std::vector<std::pair<std::string, int>> counts;
  std::unordered_map<std::string, std::size_t> where;
  for (const RowTag& tag : tags_) {
    auto [it, inserted] = where.emplace(tag.family, counts.size());
    if (inserted) counts.emplace_back(tag.family, 0);
    ++counts[it->second].second;
  }
  return counts;
}

double LinearModel::Activity(int row, const std::vector<double>& x) const {
  double sum = 0;
  for (std::int64_t k = starts_[row]; k < starts_[row + 1]; ++k) {
    sum += values_[k] * x[indices_[k]];
  }
  return sum;
}

double LinearModel::ObjectiveFloor() const {
  double floor = offset_;
  for (int c = 0; c < num_columns(); ++c) {
    if (costs_[c] == 0) continue;
    const double bound = costs_[c] > 0 ? lower_[c] : upper_[c];
    if (std::isinf(bound)) return -kInf;
    floor += costs_[c] * bound;
  }
  return floor;
}

double LinearModel::ObjectiveValue(const std::vector<double>& x) const {
  double sum = offset_;
  for (int c = 0; c < num_columns(); ++c) sum += costs_[c] * x[c];
  return sum;
}

std::vector<RowViolation> LinearModel::Violations(const std::vector<double>& x,
                                                  double tolerance) const {
  if (static_cast<int>(x.size()) != num_columns()) {
    throw std::invalid_argument("solution size differs from column count");
  }
  std::vector<RowViolation> out;
  for (int c = 0; c < num_columns(); ++c) {
    double excess = std::max(lower_[c] - x[c], x[c] - upper_[c]);
    if (integer_[c]) excess = std::max(excess, std::abs(x[c] - std::round(x[c])));
    if (excess > tolerance) out.push_back({-1 - c, x[c], excess});
  }
  for (int r = 0; r < num_rows(); ++r) {
    const double activity = Activity(r, x);
    const double excess =
        std::max(row_lower_[r] - activity, activity - row_upper_[r]);
    if (excess > tolerance) out.push_back({r, activity, excess});
  }
  return out;
}

namespace {

void WriteTerms(std::ostream& out, const std::vector<int>& columns,
                const std::vector<double>& coefs,
                const std::vector<std::string>& names) {
  int written = 0;
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (coefs[k] == 0) continue;
    out << (coefs[k] < 0 ? " - " : " + ") << std::abs(coefs[k]) << ' '
        << names[columns[k]];
    if (++written % 8 == 0) out << "\n ";
  }
  if (written == 0) out << " 0 " << names.front();
}

}  // namespace

void LinearModel::WriteLp(std::ostream& out) const {
  out.precision(17);
  out << "\\ rows " << num_rows() << ", columns " << num_columns() << "\n";
  out << "Minimize\n obj:";
  std::vector<int> cols;
  std::vector<double> coefs;
  for (int c = 0; c < num_columns(); ++c) {
    if (costs_[c] != 0) {
      cols.push_back(c);
      coefs.push_back(costs_[c]);
    }
  }
  if (num_columns() > 0) WriteTerms(out, cols, coefs, names_);
  if (offset_ != 0) out << (offset_ < 0 ? " - " : " + ") << std::abs(offset_);
  out << "\nSubject To\n";
  for (int r = 0; r < num_rows(); ++r) {
    cols.assign(indices_.begin() + starts_[r], indices_.begin() + starts_[r + 1]);
    coefs.assign(values_.begin() + starts_[r], values_.begin() + starts_[r + 1]);
    std::string name = tags_[r].family;
    for (int v : tags_[r].index) name += "_" + std::to_string(v);
    const bool equal = row_lower_[r] == row_upper_[r];
    if (equal || row_upper_[r] < kInf) {
      out << ' ' << name << ':';
      WriteTerms(out, cols, coefs, names_);
      out << (equal ? " = " : " <= ") << row_upper_[r] << "\n";
    }
    if (!equal && row_lower_[r] > -kInf) {
      out << ' ' << name << (row_upper_[r] < kInf ? "_lo" : "") << ':';
      WriteTerms(out, cols, coefs, names_);
      out << " >= " << row_lower_[r] << "\n";
    }
  }
  out << "Bounds\n";
  for (int c = 0; c < num_columns(); ++c) {
    out << ' ' << lower_[c] << " <= " << names_[c] << " <= ";
    if (upper_[c] < kInf) {
      out << upper_[c] << "\n";
    } else {
      out << "+inf\n";
    }
  }
  out << "General\n";
  for (int c = 0; c < num_columns(); ++c) {
    if (integer_[c]) out << ' ' << names_[c] << "\n";
  }
  out << "End\n";
}

}  // namespace orsched
