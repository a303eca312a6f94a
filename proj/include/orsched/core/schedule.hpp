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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "orsched/core/instance.hpp"
#include "orsched/core/rational.hpp"
#include "orsched/core/validation_report.hpp"

namespace orsched {

using Assignment = std::vector<std::optional<Placement>>;

// Emergency of length class `length` arriving at slot `slot` of robust day
// `day`. `day` is a 0-based day index, `length` a 0-based index into
// Instance::emergency_lengths.
struct EmergencyKey {
  int slot = 0;
  int day = 0;
  int length = 0;
  auto operator<=>(const EmergencyKey&) const = default;
};

// Patient `patient` fails to show up on robust day `day`.
struct NoShowKey {
  int patient = 0;
  int day = 0;
  auto operator<=>(const NoShowKey&) const = default;
};

using ScenarioKey = std::variant<EmergencyKey, NoShowKey>;

// Ordering of one (robust day, room): patients by position, their start
// slots, and the slot at which the room is released.
struct RoomDayPlan {
  int day = 0;
  int room = 0;
  std::vector<int> patients;
  std::vector<int> start_slots;
  int release = 0;
  bool operator==(const RoomDayPlan&) const = default;
};

struct NominalSchedule {
  Assignment assignment;             // x: patient -> (day, room)
  std::vector<RoomDayPlan> ordering; // one entry per (g in W, room), w-major
  Rational objective_value{0};

  const RoomDayPlan& Ordering(int w, int room, int rooms) const {
    return ordering[static_cast<std::size_t>(w) * rooms + room];
  }
  bool operator==(const NominalSchedule&) const = default;
};

// Builds the canonical nominal schedule: slots are 1-indexed, so the k-th
// patient of a room starts at 1 + the durations of the patients before it.
// `orders` holds one patient list per (w, room), w-major.
NominalSchedule MakeNominalSchedule(const Instance& instance,
                                    Assignment assignment,
                                    const std::vector<std::vector<int>>& orders);

// Orders patients of every robust (day, room) by ascending duration, ties by
// patient index.
std::vector<std::vector<int>> ShortestFirstOrders(const Instance& instance,
                                                  const Assignment& assignment);

struct BackupPlan {
  ScenarioKey key;
  Assignment reassignment;            // only nominal patients may be placed
  std::optional<int> emergency_room;  // eta (emergency plans)
  std::optional<int> substitute;      // theta (no-show plans)
  std::vector<int> dropped;           // mu (emergency plans), sorted
  Rational objective_value{0};

  bool IsEmergency() const {
    return std::holds_alternative<EmergencyKey>(key);
  }
  const EmergencyKey& emergency() const { return std::get<EmergencyKey>(key); }
  const NoShowKey& noshow() const { return std::get<NoShowKey>(key); }
  bool operator==(const BackupPlan&) const = default;
};

enum class SolveStatus {
  kOptimal,
  kFeasibleTimeLimit,
  kTimeLimitNoSolution,
  kInfeasible,
  kError,
};

const char* ToString(SolveStatus status);
SolveStatus ParseSolveStatus(const std::string& text);

struct StepReport {
  std::string step;
  SolveStatus status = SolveStatus::kError;
  double objective = 0;
  double best_bound = 0;
  double gap = 0;
  double wall_time = 0;
  // Engine-side exact evaluation of the step objective on the incumbent.
  std::optional<Rational> exact_objective;
  bool operator==(const StepReport&) const = default;
};

enum class PipelineVariant { kWarmStart, kHeuristic };

const char* ToString(PipelineVariant variant);
PipelineVariant ParsePipelineVariant(const std::string& text);

struct PipelineConfig {
  PipelineVariant variant = PipelineVariant::kHeuristic;
  double time_limit_per_step = 900.0;
  std::optional<double> total_time_limit;
  double gap_tolerance = 0.0;
  // Weight of the dropped-patient term added to the difference objective;
  // empty means |I|*|D|.
  std::optional<Rational> mu_weight;
  int epsilon = 1;
  std::uint64_t seed = 0;
  // Omit wall-clock timings from run documents.
  bool deterministic = false;
  bool operator==(const PipelineConfig&) const = default;
};

struct PipelineRun {
  std::string run_id;
  Instance instance;
  PipelineConfig config;
  std::vector<StepReport> step_reports;
  NominalSchedule plan;
  std::vector<BackupPlan> emergency_backups;  // sorted by key
  std::vector<BackupPlan> noshow_backups;     // sorted by key
  Rational nominal_objective{0};   // nominal objective after Step 1
  Rational complete_objective{0};  // nominal objective after Step 3 / Step 6
  double complete_bound = 0;       // best bound reported for that step
  std::vector<std::string> warnings;
  // Validator verdict over the plan and every back-up, when computed.
  std::optional<ValidationReport> validation;

  const BackupPlan* FindEmergency(const EmergencyKey& key) const;
  const BackupPlan* FindNoShow(const NoShowKey& key) const;
  bool operator==(const PipelineRun&) const = default;
};

}  // namespace orsched
