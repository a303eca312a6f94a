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

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "orsched/core/instance.hpp"

namespace orsched::test {

struct PatientSpec {
  std::string id;
  int deadline = 30;
  int waited = 0;
  int duration = 1;
};

// Every patient compatible everywhere with a constant duration; day 1 is the
// only robust day.
inline Instance MakeInstance(int days, int rooms, int slots, int capacity,
                             const std::vector<PatientSpec>& specs) {
  Instance instance;
  instance.name = "tiny";
  instance.horizon_days = days;
  instance.rooms = rooms;
  instance.slots_per_day = slots;
  instance.robust_days = {0};
  instance.capacity = DayRoomGrid<int>(days, rooms, capacity);
  instance.emergency_lengths.clear();
  for (int gamma : {2, 4}) {
    if (gamma <= slots) instance.emergency_lengths.push_back(gamma);
  }
  instance.overtime = 1;
  instance.fixed_delay = 1;
  instance.max_delay = std::min(2, days);
  for (const PatientSpec& s : specs) {
    Patient p;
    p.id = s.id;
    p.deadline_days = s.deadline;
    p.waited_days = s.waited;
    p.durations = DayRoomGrid<int>(days, rooms, s.duration);
    p.compatibility = DayRoomGrid<char>(days, rooms, 1);
    instance.patients.push_back(std::move(p));
  }
  instance.Validate();
  return instance;
}

// Random instance inside the exhaustive-search limits: up to 6 patients,
// 2-3 days, 1-2 rooms, 6-8 slots, delays up to 3 days.
inline Instance RandomTinyInstance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  static const int kDeadlines[] = {8, 30, 60, 180, 360};
  const int days = pick(2, 3);
  const int rooms = pick(1, 2);
  const int slots = pick(6, 8);
  const int patients = pick(2, 6);

  Instance instance;
  instance.name = "tiny-" + std::to_string(seed);
  instance.horizon_days = days;
  instance.rooms = rooms;
  instance.slots_per_day = slots;
  instance.robust_days = {0};
  instance.capacity = DayRoomGrid<int>(days, rooms);
  for (int d = 0; d < days; ++d) {
    for (int j = 0; j < rooms; ++j) {
      instance.capacity(d, j) = pick(slots - 3, slots);
    }
  }
  instance.emergency_lengths = {pick(1, 2), pick(3, slots)};
  instance.overtime = pick(0, 2);
  instance.max_delay = pick(1, std::min(3, days));
  // Keeps g + fixed_delay inside the horizon for the robust day.
  instance.fixed_delay = pick(1, std::min(instance.max_delay, days - 1));
  instance.noshow_mode = pick(0, 1) == 0 ? NoShowMode::kFixedDelay
                                         : NoShowMode::kWithinDelay;
  for (int i = 0; i < patients; ++i) {
    Patient p;
    p.id = "P" + std::to_string(i + 1);
    p.deadline_days = kDeadlines[pick(0, 4)];
    p.waited_days = pick(0, p.deadline_days);
    p.durations = DayRoomGrid<int>(days, rooms);
    p.compatibility = DayRoomGrid<char>(days, rooms);
    const int base = pick(1, 4);
    for (int d = 0; d < days; ++d) {
      for (int j = 0; j < rooms; ++j) {
        p.durations(d, j) = base;
        p.compatibility(d, j) = pick(0, 6) == 0 ? 0 : 1;
      }
    }
    instance.patients.push_back(std::move(p));
  }
  instance.Validate();
  return instance;
}

}  // namespace orsched::test
