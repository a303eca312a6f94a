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

#include "orsched/core/instance.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>

namespace orsched {
namespace {

void Require(bool condition, const std::string& message) {
  if (!condition) throw InvalidInstance(message);
}

}  // namespace

std::optional<int> Instance::PatientIndex(std::string_view id) const {
  for (int i = 0; i < num_patients(); ++i) {
    if (patients[i].id == id) return i;
  }
  return std::nullopt;
}

std::optional<int> Instance::RobustIndex(int day) const {
  for (int w = 0; w < num_robust_days(); ++w) {
    if (robust_days[w] == day) return w;
  }
  return std::nullopt;
}

void Instance::Validate() const {
  Require(horizon_days >= 1, "horizon_days must be positive");
  Require(rooms >= 1, "rooms must be positive");
  Require(slots_per_day >= 1, "slots_per_day must be positive");
  Require(!patients.empty(), "patients must not be empty");
  Require(capacity.days() == horizon_days && capacity.rooms() == rooms,
          "capacity must be horizon_days x rooms");
  for (int d = 0; d < horizon_days; ++d) {
    for (int j = 0; j < rooms; ++j) {
      Require(capacity(d, j) >= 0, "capacity must be non-negative");
      Require(capacity(d, j) <= slots_per_day,
              "capacity of day " + std::to_string(d + 1) + ", room " +
                  std::to_string(j + 1) + " exceeds slots_per_day");
    }
  }
  Require(!robust_days.empty(), "robust_days must not be empty");
  for (int w = 0; w < num_robust_days(); ++w) {
    Require(robust_days[w] == w, "robust_days must be a prefix of the horizon");
    Require(robust_days[w] + 1 < horizon_days,
            "every robust day needs a following day in the horizon");
  }
  Require(!emergency_lengths.empty(), "emergency_lengths must not be empty");
  for (int gamma : emergency_lengths) {
    Require(gamma >= 1 && gamma <= slots_per_day,
            "emergency lengths must lie in [1, slots_per_day]");
  }
  Require(overtime >= 0, "overtime must be non-negative");
  Require(fixed_delay >= 1, "fixed_delay must be positive");
  Require(fixed_delay <= max_delay, "fixed_delay must not exceed max_delay");
  Require(max_delay <= horizon_days, "max_delay must not exceed horizon_days");

  std::set<std::string> ids;
  for (const Patient& p : patients) {
    Require(!p.id.empty(), "patient id must not be empty");
    Require(ids.insert(p.id).second, "duplicate patient id '" + p.id + "'");
    Require(p.deadline_days >= 1,
            "patient '" + p.id + "': deadline_days must be positive");
    Require(p.waited_days >= 0,
            "patient '" + p.id + "': waited_days must be non-negative");
    Require(p.durations.days() == horizon_days && p.durations.rooms() == rooms,
            "patient '" + p.id + "': durations must be horizon_days x rooms");
    Require(p.compatibility.days() == horizon_days &&
                p.compatibility.rooms() == rooms,
            "patient '" + p.id + "': compatibility must be horizon_days x rooms");
    for (int d = 0; d < horizon_days; ++d) {
      for (int j = 0; j < rooms; ++j) {
        if (p.Compatible(d, j)) {
          Require(p.Duration(d, j) >= 1,
                  "patient '" + p.id + "': durations must be >= 1 slot");
        }
      }
    }
  }
}

int PositionCount(const Instance& instance) {
  int max_capacity = 0;
  for (int d = 0; d < instance.horizon_days; ++d) {
    for (int j = 0; j < instance.rooms; ++j) {
      max_capacity = std::max(max_capacity, instance.capacity(d, j));
    }
  }
  int min_duration = std::numeric_limits<int>::max();
  for (const Patient& p : instance.patients) {
    for (int d = 0; d < instance.horizon_days; ++d) {
      for (int j = 0; j < instance.rooms; ++j) {
        if (p.Compatible(d, j)) {
          min_duration = std::min(min_duration, p.Duration(d, j));
        }
      }
    }
  }
  if (min_duration == std::numeric_limits<int>::max()) {
    throw InvalidInstance("no compatible (patient, day, room) triple");
  }
  return (max_capacity + min_duration - 1) / min_duration;
}

}  // namespace orsched
