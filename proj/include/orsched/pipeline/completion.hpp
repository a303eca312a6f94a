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

#include "orsched/core/schedule.hpp"
#include "orsched/mip/schedule_model.hpp"

namespace orsched {

struct Completion {
  FullSolution solution;
  // Robust-day patients the repair loop took out of the nominal schedule.
  std::vector<int> unscheduled;
  // Families of the rows a repair round still found violated, first round
  // first. Empty when the first candidate was already feasible.
  std::vector<std::string> repaired_families;
};

// Greedy completion of a nominal assignment into a solution of every block
// the model holds: shortest-first orders, first-available emergency rooms,
// emergency plans that move displaced patients forward and bump later
// patients when needed, no-show plans with a substitute per room when one
// fits. Robust-day patients are taken out until the encoded solution meets
// every row.
Completion CompleteSchedule(const ScheduleModel& model, Assignment nominal);

}  // namespace orsched
