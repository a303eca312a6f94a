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

#include <map>
#include <set>

#include "orsched/core/io.hpp"
#include "orsched/gen/generator.hpp"

namespace orsched {
namespace {

TEST(WeekendTest, MultiplesOfSixOrSeven) {
  std::vector<int> closed;
  for (int d = 1; d <= 14; ++d) {
    if (IsWeekend(d)) closed.push_back(d);
  }
  EXPECT_EQ(closed, (std::vector<int>{6, 7, 12, 14}));
}

TEST(GeneratorTest, InstanceShape) {
  const Instance instance = Generate(DefaultSpec(40, 'A', 14, 2));
  EXPECT_EQ(instance.name, "40 A 14x2");
  EXPECT_EQ(instance.num_patients(), 40);
  EXPECT_EQ(instance.horizon_days, 14);
  EXPECT_EQ(instance.rooms, 2);
  EXPECT_EQ(instance.slots_per_day, 24);
  EXPECT_EQ(instance.robust_days, (std::vector<int>{0}));
  EXPECT_EQ(instance.emergency_lengths, (std::vector<int>{4, 8, 16}));
  EXPECT_EQ(instance.overtime, 4);
  EXPECT_EQ(instance.max_delay, 7);
  EXPECT_EQ(instance.fixed_delay, 2);
  for (int d = 0; d < 14; ++d) {
    for (int j = 0; j < 2; ++j) EXPECT_EQ(instance.capacity(d, j), 24);
  }
}

TEST(GeneratorTest, PatientInvariants) {
  for (const GeneratorSpec& spec : ExperimentGrid({40})) {
    const Instance instance = Generate(spec);
    SCOPED_TRACE(instance.name);
    const std::set<int> deadlines{8, 30, 60, 180, 360};
    std::set<int> histogram;
    for (const auto& bin : spec.duration_histogram) {
      histogram.insert(bin.first);
    }
    for (const Patient& p : instance.patients) {
      EXPECT_TRUE(deadlines.count(p.deadline_days));
      EXPECT_GE(p.waited_days, 0);
      EXPECT_LE(p.waited_days, p.deadline_days);
      const int t = p.Duration(0, 0);
      EXPECT_TRUE(histogram.count(t));
      for (int d = 0; d < instance.horizon_days; ++d) {
        for (int j = 0; j < instance.rooms; ++j) {
          EXPECT_EQ(p.Duration(d, j), t);
          EXPECT_EQ(p.Compatible(d, j), !IsWeekend(d + 1));
        }
      }
    }
  }
}

TEST(GeneratorTest, Deterministic) {
  const GeneratorSpec spec = DefaultSpec(80, 'C', 28, 3);
  EXPECT_EQ(Generate(spec), Generate(spec));
  EXPECT_EQ(Dump(InstanceToJson(Generate(spec))),
            Dump(InstanceToJson(Generate(spec))));
  GeneratorSpec other = spec;
  other.seed += 1;
  EXPECT_NE(Generate(spec), Generate(other));
}

TEST(GeneratorTest, CellsOfOneListSharePatients) {
  const Instance base = Generate(DefaultSpec(40, 'B', 14, 2));
  for (auto [days, rooms] : {std::pair{14, 3}, {28, 2}, {28, 3}}) {
    const Instance cell = Generate(DefaultSpec(40, 'B', days, rooms));
    for (int i = 0; i < 40; ++i) {
      EXPECT_EQ(cell.patients[i].deadline_days,
                base.patients[i].deadline_days);
      EXPECT_EQ(cell.patients[i].waited_days, base.patients[i].waited_days);
      EXPECT_EQ(cell.patients[i].Duration(0, 0),
                base.patients[i].Duration(0, 0));
    }
  }
}

TEST(GridTest, FortyEightCells) {
  const auto grid = ExperimentGrid();
  ASSERT_EQ(grid.size(), 48u);
  std::set<std::string> names;
  for (const auto& spec : grid) names.insert(spec.CellName());
  EXPECT_EQ(names.size(), 48u);
  EXPECT_EQ(grid.front().CellName(), "40 A 14x2");
  EXPECT_EQ(grid.back().CellName(), "120 D 28x3");
  for (const auto& spec : grid) {
    const Instance instance = Generate(spec);
    EXPECT_NO_THROW(instance.Validate());
    EXPECT_EQ(instance.num_robust_days(), 1);
  }
}

TEST(GeneratorTest, RejectsBadSpecs) {
  auto bad = [](auto edit) {
    GeneratorSpec spec = DefaultSpec(40, 'A', 14, 2);
    edit(spec);
    return spec;
  };
  EXPECT_THROW(Generate(bad([](auto& s) { s.n_patients = 0; })), InvalidSpec);
  EXPECT_THROW(Generate(bad([](auto& s) { s.horizon = 1; })), InvalidSpec);
  EXPECT_THROW(Generate(bad([](auto& s) { s.urgency_mix = {0.5, 0.4}; })),
               InvalidSpec);
  EXPECT_THROW(
      Generate(bad([](auto& s) { s.urgency_mix = {0.5, 0.5, 0.5, 0, 0}; })),
      InvalidSpec);
  EXPECT_THROW(Generate(bad([](auto& s) { s.duration_histogram = {{0, 1}}; })),
               InvalidSpec);
  EXPECT_THROW(DefaultDurationHistogram('E'), InvalidSpec);
}

// Pearson statistic of observed counts against expected shares.
double ChiSquare(const std::map<int, int>& observed,
                 const std::vector<std::pair<int, double>>& shares, int n) {
  double stat = 0;
  for (const auto& [value, share] : shares) {
    const double expected = share * n;
    const auto it = observed.find(value);
    const double o = it == observed.end() ? 0 : it->second;
    stat += (o - expected) * (o - expected) / expected;
  }
  return stat;
}

// Critical values at the 0.1% level.
constexpr double kChi2Df3 = 16.27;
constexpr double kChi2Df4 = 18.47;
constexpr double kChi2Df5 = 20.52;

TEST(GeneratorTest, DurationsFollowTheHistogram) {
  const std::map<char, double> critical{
      {'A', kChi2Df5}, {'B', kChi2Df4}, {'C', kChi2Df3}, {'D', kChi2Df4}};
  const int n = 10000;
  for (char group : {'A', 'B', 'C', 'D'}) {
    GeneratorSpec spec = DefaultSpec(n, group, 14, 1);
    const Instance instance = Generate(spec);
    std::map<int, int> counts;
    for (const Patient& p : instance.patients) ++counts[p.Duration(0, 0)];
    EXPECT_LT(ChiSquare(counts, spec.duration_histogram, n),
              critical.at(group))
        << group;
  }
}

TEST(GeneratorTest, UrgencyFollowsTheMix) {
  const int n = 10000;
  const GeneratorSpec spec = DefaultSpec(n, 'A', 14, 1);
  const Instance instance = Generate(spec);
  std::map<int, int> counts;
  for (const Patient& p : instance.patients) ++counts[p.deadline_days];
  std::vector<std::pair<int, double>> shares;
  for (std::size_t k = 0; k < spec.deadlines.size(); ++k) {
    shares.push_back({spec.deadlines[k], spec.urgency_mix[k]});
  }
  EXPECT_LT(ChiSquare(counts, shares, n), kChi2Df4);
}

}  // namespace
}  // namespace orsched
