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

#include <filesystem>
#include <limits>
#include <random>

#include "orsched/core/io.hpp"
#include "orsched/core/penalties.hpp"
#include "orsched/core/schedule.hpp"
#include "orsched/gen/generator.hpp"
#include "support/tiny.hpp"

namespace orsched {
namespace {

using test::MakeInstance;

Instance OnePatient(int days, int deadline, int waited, int duration = 1) {
  return MakeInstance(days, 1, 24, 24, {{"P1", deadline, waited, duration}});
}

TEST(Penalties, NoOverdueTermBeforeDeadline) {
  const PenaltyTable pen = ComputePenalties(OnePatient(2, 360, 0));
  EXPECT_EQ(pen.p(0, 0), Rational(1));
}

TEST(Penalties, OverdueTermByHand) {
  const PenaltyTable pen = ComputePenalties(OnePatient(14, 30, 28));
  // u = 12, day 5 is 3 days overdue.
  EXPECT_EQ(pen.p(0, 4), Rational(96));
  // Not operated: day 15, 13 days overdue.
  EXPECT_EQ(pen.q(0), Rational(672));
}

TEST(Penalties, NonIntegerUrgencyStaysExact) {
  const PenaltyTable pen = ComputePenalties(OnePatient(2, 7, 0));
  EXPECT_EQ(pen.p(0, 0), Rational(360, 7));
  EXPECT_EQ(pen.p(0, 1), Rational(720, 7));
}

TEST(Penalties, ZeroDeadlineRejected) {
  Instance instance = OnePatient(2, 30, 0);
  instance.patients[0].deadline_days = 0;
  EXPECT_THROW(ComputePenalties(instance), InvalidInstance);
  EXPECT_THROW(instance.Validate(), InvalidInstance);
}

TEST(Penalties, MonotoneInDayAndBelowUnscheduled) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> deadline(1, 400), days(2, 28);
  for (int trial = 0; trial < 200; ++trial) {
    const int l = deadline(rng);
    const int m = std::uniform_int_distribution<int>(0, 2 * l)(rng);
    const PenaltyTable pen = ComputePenalties(OnePatient(days(rng), l, m));
    for (int d = 0; d < pen.days(); ++d) {
      EXPECT_GE(pen.p(0, d), Rational(0));
      EXPECT_LT(pen.p(0, d), pen.q(0));
      if (d + 1 < pen.days()) {
        EXPECT_LT(pen.p(0, d), pen.p(0, d + 1));
      }
    }
  }
}

TEST(Penalties, Deterministic) {
  const Instance instance = Generate(DefaultSpec(40, 'B', 14, 2));
  const PenaltyTable a = ComputePenalties(instance);
  const PenaltyTable b = ComputePenalties(instance);
  for (int i = 0; i < a.patients(); ++i) {
    EXPECT_EQ(a.q(i), b.q(i));
    for (int d = 0; d < a.days(); ++d) EXPECT_EQ(a.p(i, d), b.p(i, d));
  }
}

TEST(NominalObjective, EmptyScheduleChargesEveryCell) {
  const Instance instance = MakeInstance(
      3, 2, 8, 0, {{"P1", 30, 0, 2}, {"P2", 8, 5, 3}});
  const PenaltyTable pen = ComputePenalties(instance);
  const Rational expected = Rational(6) * (pen.q(0) + pen.q(1));
  EXPECT_EQ(NominalObjective(instance, pen, Assignment(2)), expected);
}

TEST(NominalObjective, OneScheduledPatient) {
  const Instance instance = MakeInstance(3, 2, 8, 8, {{"P1", 30, 0, 2}});
  const PenaltyTable pen = ComputePenalties(instance);
  Assignment x(1);
  x[0] = Placement{1, 1};
  EXPECT_EQ(NominalObjective(instance, pen, x),
            pen.p(0, 1) + pen.q(0) * 5);
}

TEST(PositionCount, CeilingOfCapacityOverShortest) {
  EXPECT_EQ(PositionCount(OnePatient(2, 30, 0, 1)), 24);
  EXPECT_EQ(PositionCount(OnePatient(2, 30, 0, 2)), 12);
  EXPECT_EQ(PositionCount(OnePatient(2, 30, 0, 5)), 5);
}

TEST(PositionCount, CoversLargestCapacity) {
  for (int t = 1; t <= 24; ++t) {
    const Instance instance = OnePatient(2, 30, 0, t);
    EXPECT_GE(PositionCount(instance) * t, 24);
  }
}

TEST(PositionCount, NoCompatibleTripleRejected) {
  Instance instance = OnePatient(2, 30, 0);
  instance.patients[0].compatibility = DayRoomGrid<char>(2, 1, 0);
  EXPECT_THROW(PositionCount(instance), InvalidInstance);
}

TEST(InstanceValidate, RejectsBrokenInvariants) {
  const Instance base = OnePatient(3, 30, 0);
  {
    Instance bad = base;
    bad.capacity(0, 0) = 25;
    EXPECT_THROW(bad.Validate(), InvalidInstance);
  }
  {
    Instance bad = base;
    bad.emergency_lengths = {25};
    EXPECT_THROW(bad.Validate(), InvalidInstance);
  }
  {
    Instance bad = base;
    bad.fixed_delay = 3;
    bad.max_delay = 2;
    EXPECT_THROW(bad.Validate(), InvalidInstance);
  }
  {
    Instance bad = base;
    bad.robust_days = {2};
    EXPECT_THROW(bad.Validate(), InvalidInstance);
  }
  {
    Instance bad = base;
    bad.patients[0].waited_days = -1;
    EXPECT_THROW(bad.Validate(), InvalidInstance);
  }
  {
    Instance bad = base;
    bad.patients[0].durations(1, 0) = 0;
    EXPECT_THROW(bad.Validate(), InvalidInstance);
  }
}

const char* kMinimalInstance = R"({
  "schema_version": 1,
  "kind": "instance",
  "name": "minimal",
  "horizon_days": 2,
  "robust_days": [1],
  "rooms": 1,
  "slots_per_day": 8,
  "capacity": [[8], [8]],
  "emergency_lengths": [2, 4],
  "overtime": 1,
  "fixed_delay": 1,
  "max_delay": 2,
  "noshow_mode": "fixed",
  "patients": [
    {"id": "P1", "deadline_days": 30, "waited_days": 3,
     "durations": [[3], [3]], "compatibility": [[1], [true]]}
  ]
})";

TEST(InstanceIo, MinimalDocument) {
  const Instance instance = InstanceFromJson(Json::parse(kMinimalInstance));
  ASSERT_EQ(instance.num_patients(), 1);
  EXPECT_EQ(instance.robust_days, std::vector<int>{0});
  EXPECT_TRUE(instance.patients[0].Compatible(1, 0));
  EXPECT_EQ(InstanceFromJson(InstanceToJson(instance)), instance);
}

TEST(InstanceIo, CapacityAboveSlotsIsValidationError) {
  Json doc = Json::parse(kMinimalInstance);
  doc["capacity"][1][0] = 9;
  EXPECT_THROW(InstanceFromJson(doc), InvalidInstance);
}

TEST(InstanceIo, SchemaErrorsCarryFieldPath) {
  Json doc = Json::parse(kMinimalInstance);
  doc["patients"][0].erase("waited_days");
  try {
    InstanceFromJson(doc);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.path(), "$.patients[0].waited_days");
  }
  doc = Json::parse(kMinimalInstance);
  doc["capacity"] = Json::array({Json::array({8})});
  EXPECT_THROW(InstanceFromJson(doc), ParseError);
  doc = Json::parse(kMinimalInstance);
  doc["schema_version"] = 2;
  EXPECT_THROW(InstanceFromJson(doc), ParseError);
  doc = Json::parse(kMinimalInstance);
  doc["noshow_mode"] = "sometimes";
  EXPECT_THROW(InstanceFromJson(doc), ParseError);
}

TEST(InstanceIo, GeneratedInstanceRoundTripsThroughFile) {
  const Instance instance = Generate(DefaultSpec(40, 'C', 14, 2));
  const auto path =
      std::filesystem::temp_directory_path() / "orsched_io_roundtrip.json";
  SaveInstance(path, instance);
  EXPECT_EQ(LoadInstance(path), instance);
  std::filesystem::remove(path);
}

TEST(Schedule, StartTimesFollowOrder) {
  const Instance instance =
      MakeInstance(2, 1, 24, 24, {{"A", 30, 0, 4}, {"B", 30, 0, 6}});
  Assignment x(2, Placement{0, 0});
  const NominalSchedule plan = MakeNominalSchedule(instance, x, {{0, 1}});
  const RoomDayPlan& room = plan.Ordering(0, 0, 1);
  EXPECT_EQ(room.start_slots, (std::vector<int>{1, 5}));
  EXPECT_EQ(room.release, 11);
}

TEST(Schedule, SinglePatientStartsAtSlotOne) {
  const Instance instance = MakeInstance(2, 1, 24, 24, {{"A", 30, 0, 7}});
  const NominalSchedule plan =
      MakeNominalSchedule(instance, Assignment(1, Placement{0, 0}), {{0}});
  EXPECT_EQ(plan.Ordering(0, 0, 1).start_slots, std::vector<int>{1});
}

TEST(Schedule, EmptyRoomReleasedAtZero) {
  const Instance instance = MakeInstance(2, 1, 24, 24, {{"A", 30, 0, 7}});
  const NominalSchedule plan =
      MakeNominalSchedule(instance, Assignment(1), {{}});
  EXPECT_EQ(plan.Ordering(0, 0, 1).release, 0);
}

TEST(Schedule, ShortestFirstBreaksTiesByIndex) {
  const Instance instance = MakeInstance(
      2, 1, 24, 24, {{"A", 30, 0, 5}, {"B", 30, 0, 2}, {"C", 30, 0, 5}});
  const auto orders =
      ShortestFirstOrders(instance, Assignment(3, Placement{0, 0}));
  EXPECT_EQ(orders[0], (std::vector<int>{1, 0, 2}));
}

TEST(Schedule, StatusNamesRoundTrip) {
  for (SolveStatus s :
       {SolveStatus::kOptimal, SolveStatus::kFeasibleTimeLimit,
        SolveStatus::kTimeLimitNoSolution, SolveStatus::kInfeasible,
        SolveStatus::kError}) {
    EXPECT_EQ(ParseSolveStatus(ToString(s)), s);
  }
  EXPECT_EQ(ParsePipelineVariant(ToString(PipelineVariant::kWarmStart)),
            PipelineVariant::kWarmStart);
}

TEST(RunIo, MissingBoundsRoundTrip) {
  PipelineRun run;
  run.run_id = "bounds";
  run.instance = test::RandomTinyInstance(1);
  const Assignment none(run.instance.patients.size());
  run.plan = MakeNominalSchedule(run.instance, none,
                                 ShortestFirstOrders(run.instance, none));
  StepReport step;
  step.step = "step5";
  step.status = SolveStatus::kFeasibleTimeLimit;
  step.objective = 3;
  step.best_bound = -std::numeric_limits<double>::infinity();
  step.gap = std::numeric_limits<double>::infinity();
  run.step_reports.push_back(step);
  run.complete_bound = -std::numeric_limits<double>::infinity();

  const Json doc = RunToJson(run);
  EXPECT_TRUE(doc["step_reports"][0]["best_bound"].is_null());
  const PipelineRun back = RunFromJson(Json::parse(doc.dump()));
  EXPECT_EQ(back.step_reports, run.step_reports);
  EXPECT_EQ(back.complete_bound, run.complete_bound);
}

TEST(Rational, TextRoundTrip) {
  for (const Rational& r : {Rational(0), Rational(-7, 3), Rational(360, 7)}) {
    EXPECT_EQ(ParseRational(ToString(r)), r);
  }
}

}  // namespace
}  // namespace orsched
