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

#include "orsched/core/instance.hpp"
#include "orsched/core/schedule.hpp"

namespace orsched {

enum class GanttKind { kNominal, kBackup, kEmergency, kSubstitute };

const char* ToString(GanttKind kind);

// One bar of a Gantt chart. Days and rooms are 1-based; [start_slot,
// end_slot) on the day's slot grid. day_offset counts how many days a patient
// moved relative to the nominal plan.
struct GanttEntry {
  int day = 1;
  int room = 1;
  std::string patient;  // empty for the emergency bar
  int start_slot = 1;
  int end_slot = 1;
  GanttKind kind = GanttKind::kNominal;
  int day_offset = 0;
  bool operator==(const GanttEntry&) const = default;
};

// Robust days follow the plan's ordering; other days are packed from slot 1
// by patient index.
std::vector<GanttEntry> NominalGantt(const Instance& instance,
                                     const NominalSchedule& plan);

// Emergency plans: in every room of the emergency day, patients starting no
// later than h keep their slots; the emergency occupies gamma_l slots from
// the first availability of its room; remaining patients follow in nominal
// order. No-show plans: the substitute takes the no-show's position and the
// room is repacked. Other days are packed by patient index. Patients whose
// (day, room) differs from the nominal plan are tagged backup.
std::vector<GanttEntry> BackupGantt(const Instance& instance,
                                    const NominalSchedule& nominal,
                                    const BackupPlan& plan);

}  // namespace orsched
