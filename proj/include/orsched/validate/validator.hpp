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

#include "orsched/core/instance.hpp"
#include "orsched/core/schedule.hpp"
#include "orsched/core/validation_report.hpp"

namespace orsched {

struct ValidatorOptions {
  // Read "impacted by an emergency" as: starts after h in the emergency's
  // room. The default reads it over all rooms of the emergency day.
  bool room_local_impact = false;
};

// Admissible first-availability values of one room for an emergency at
// slot h: a released room is available at h, a busy room when one of the
// surgeries running at h ends. Before the first slot every room counts as
// available at 0.
struct AvailabilityRange {
  int lo = 0;
  int hi = 0;
};

AvailabilityRange FirstAvailability(const Instance& instance,
                                    const RoomDayPlan& room, int h);

// Slots the emergency takes from room capacity on its day.
int EmergencyReduction(const Instance& instance, int day, int room, int h,
                       int length);

// Nominal patients that a plan fails to keep within Delta days of their
// nominal day, in patient order.
std::vector<int> MinimalDropped(const Instance& instance,
                                const Assignment& nominal,
                                const Assignment& plan);

ValidationReport ValidateNominal(const Instance& instance,
                                 const NominalSchedule& plan);

ValidationReport ValidateEmergencyBackup(const Instance& instance,
                                         const NominalSchedule& nominal,
                                         const BackupPlan& plan,
                                         const ValidatorOptions& options = {});

ValidationReport ValidateNoShowBackup(const Instance& instance,
                                      const NominalSchedule& nominal,
                                      const BackupPlan& plan);

// Nominal plan, every back-up, scenario completeness, shared substitutes and
// the stored objective values.
ValidationReport ValidateRun(const PipelineRun& run,
                             const ValidatorOptions& options = {});

}  // namespace orsched
