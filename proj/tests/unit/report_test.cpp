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


#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "orsched/report/report.hpp"

namespace orsched {
namespace {

PipelineRun MakeRun(const std::string& name, int days, int rooms,
                    PipelineVariant variant, Rational nominal, Rational complete,
                    double bound) {
  PipelineRun run;
  run.instance.name = name;
  run.instance.horizon_days = days;
  run.instance.rooms = rooms;
  run.config.variant = variant;
  run.nominal_objective = nominal;
  run.complete_objective = complete;
  run.complete_bound = bound;
  return run;
}

std::vector<PipelineRun> TwoCells() {
  using V = PipelineVariant;
  return {
      MakeRun("80 B 14x2", 14, 2, V::kHeuristic, 100, 130, 0),
      MakeRun("40 A 28x3", 28, 3, V::kWarmStart, 200, 250, 240),
      MakeRun("40 A 28x3", 28, 3, V::kHeuristic, 200, 260, 0),
      MakeRun("80 B 14x2", 14, 2, V::kWarmStart, 100, 125, 120),
  };
}

TEST(ListIdTest, StripsTheCellSuffix) {
  EXPECT_EQ(ListIdOf("40 A 14x2"), "40 A");
  EXPECT_EQ(ListIdOf("120 D 28x3"), "120 D");
  EXPECT_EQ(ListIdOf("custom"), "custom");
}

TEST(ResultRowsTest, PairsVariantsAndSorts) {
  const auto rows = BuildResultRows(TwoCells());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].id, "40 A");
  EXPECT_EQ(rows[1].id, "80 B");
  const ResultRow& r = rows[0];
  EXPECT_EQ(r.days, 28);
  EXPECT_EQ(r.rooms, 3);
  EXPECT_EQ(*r.of, Rational(200));
  EXPECT_EQ(*r.of_ws, Rational(250));
  EXPECT_EQ(*r.of_heu, Rational(260));
  EXPECT_DOUBLE_EQ(*r.lb_ws, 240);
  EXPECT_DOUBLE_EQ(*r.DiffWs(), 50);
  EXPECT_DOUBLE_EQ(*r.DiffHeu(), 60);
  EXPECT_NEAR(*r.GapWs(), 100.0 * 10 / 240, 1e-12);
  EXPECT_NEAR(*r.GapHeu(), 100.0 * 20 / 240, 1e-12);
}

TEST(ResultRowsTest, MissingVariantLeavesColumnsEmpty) {
  const auto rows = BuildResultRows(
      {MakeRun("40 C 14x2", 14, 2, PipelineVariant::kHeuristic, 10, 12, 0)});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_FALSE(rows[0].lb_ws.has_value());
  EXPECT_FALSE(rows[0].GapHeu().has_value());
  EXPECT_DOUBLE_EQ(*rows[0].DiffHeu(), 2);
}

TEST(ResultRowsTest, DuplicateRunThrows) {
  auto runs = TwoCells();
  runs.push_back(runs[1]);
  EXPECT_THROW(BuildResultRows(runs), ReportError);
}

TEST(AverageTest, MeanOverRowsWithTheColumn) {
  auto runs = TwoCells();
  runs.push_back(
      MakeRun("120 A 14x2", 14, 2, PipelineVariant::kHeuristic, 300, 390, 0));
  const auto rows = BuildResultRows(runs);
  const AverageRow avg = Average(rows);
  EXPECT_DOUBLE_EQ(*avg.of, 200);
  EXPECT_DOUBLE_EQ(*avg.lb_ws, 180);
  EXPECT_DOUBLE_EQ(*avg.of_heu, (260.0 + 130 + 390) / 3);
  EXPECT_DOUBLE_EQ(*avg.diff_ws, (50.0 + 25) / 2);
  EXPECT_DOUBLE_EQ(*avg.gap_ws,
                   (100.0 * 10 / 240 + 100.0 * 5 / 120) / 2);
}

TEST(FormatTest, CsvLayout) {
  const std::string csv = FormatCsv(BuildResultRows(TwoCells()));
  std::istringstream in(csv);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0],
            "ID,|D|,|J|,OF,LB_WS,OF_WS,OF_Heu,OF_WS-OF,OF_Heu-OF,"
            "(OF_WS-LB_WS)/LB_WS,(OF_Heu-LB_WS)/LB_WS");
  EXPECT_EQ(lines[1],
            "40 A,28,3,200.00,240.00,250.00,260.00,50.00,60.00,4.17%,8.33%");
  EXPECT_EQ(lines[3].rfind("Average,,,150.00,", 0), 0u);
}

TEST(FormatTest, AlignedColumnsLineUp) {
  const std::string text = FormatAligned(BuildResultRows(TwoCells()));
  std::istringstream in(text);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  ASSERT_EQ(lines.size(), 4u);
  // Right-aligned numbers: every row ends in the same column.
  for (const auto& line : lines) EXPECT_EQ(line.size(), lines[0].size());
  EXPECT_EQ(lines[1].rfind("40 A", 0), 0u);
}

TEST(FormatTest, ByteStable) {
  const auto rows = BuildResultRows(TwoCells());
  EXPECT_EQ(FormatCsv(rows), FormatCsv(BuildResultRows(TwoCells())));
  EXPECT_EQ(FormatAligned(rows), FormatAligned(rows));
}

}  // namespace
}  // namespace orsched
