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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orsched/core/rational.hpp"
#include "orsched/core/schedule.hpp"

namespace orsched {

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One row of the results table: a patient list on one (horizon, rooms)
// cell, with the warm-start and heuristic runs side by side.
struct ResultRow {
  std::string id;  // patient list, e.g. "40 A"
  int days = 0;
  int rooms = 0;
  std::optional<Rational> of;      // nominal objective
  std::optional<double> lb_ws;     // complete-model bound, warm start
  std::optional<Rational> of_ws;   // complete-model objective, warm start
  std::optional<Rational> of_heu;  // complete-model objective, heuristic

  std::optional<double> DiffWs() const;
  std::optional<double> DiffHeu() const;
  // Percent gaps against lb_ws.
  std::optional<double> GapWs() const;
  std::optional<double> GapHeu() const;
};

// "40 A 14x2" -> "40 A"; names without the "DxJ" suffix are kept whole.
std::string ListIdOf(const std::string& instance_name);

// Pairs runs by (list, |D|, |J|) and sorts rows by list size, list name,
// |D|, |J|. Throws ReportError when a cell has two runs of one variant.
std::vector<ResultRow> BuildResultRows(const std::vector<PipelineRun>& runs);

struct AverageRow {
  std::optional<double> of, lb_ws, of_ws, of_heu, diff_ws, diff_heu, gap_ws,
      gap_heu;
};

// Arithmetic mean of each column over the rows that have it.
AverageRow Average(const std::vector<ResultRow>& rows);

// Comma-separated table with a header and a trailing Average line.
std::string FormatCsv(const std::vector<ResultRow>& rows);
// Space-aligned version of the same table.
std::string FormatAligned(const std::vector<ResultRow>& rows);

}  // namespace orsched
