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

#include "orsched/core/penalties.hpp"

#include <algorithm>
#include <string>

namespace orsched {
namespace {

// (day + overdue) * urgency, `day` 1-based.
Rational DayPenalty(const Patient& patient, std::int64_t day) {
  const std::int64_t overdue =
      std::max<std::int64_t>(patient.waited_days + day - patient.deadline_days,
                             0);
  return Rational(day + overdue) * patient.Urgency();
}

}  // namespace

PenaltyTable::PenaltyTable(int patients, int days)
    : patients_(patients), days_(days),
      p_(static_cast<std::size_t>(patients) * days), q_(patients) {}

PenaltyTable ComputePenalties(const Instance& instance) {
  const int days = instance.horizon_days;
  PenaltyTable table(instance.num_patients(), days);
  for (int i = 0; i < instance.num_patients(); ++i) {
    const Patient& patient = instance.patients[i];
    if (patient.deadline_days <= 0) {
      throw InvalidInstance("patient '" + patient.id +
                            "': deadline_days must be positive");
    }
    for (int d = 0; d < days; ++d) table.p(i, d) = DayPenalty(patient, d + 1);
    // Unlike p, the first term of q counts the days already waited.
    const std::int64_t after = patient.waited_days + days + 1;
    table.q(i) = Rational(after + std::max<std::int64_t>(
                                      after - patient.deadline_days, 0)) *
                 patient.Urgency();
  }
  return table;
}

Rational NominalObjective(const Instance& instance, const PenaltyTable& pen,
                          const Assignment& x) {
  const std::int64_t cells =
      static_cast<std::int64_t>(instance.horizon_days) * instance.rooms;
  Rational total(0);
  for (int i = 0; i < instance.num_patients(); ++i) {
    if (x[i]) {
      total += pen.p(i, x[i]->day) + pen.q(i) * (cells - 1);
    } else {
      total += pen.q(i) * cells;
    }
  }
  return total;
}

Rational EmergencyScenarioCost(const Instance& instance,
                               const PenaltyTable& pen, int day,
                               const Assignment& plan) {
  const std::int64_t cells =
      static_cast<std::int64_t>(instance.horizon_days) * instance.rooms;
  Rational total(0);
  for (int i = 0; i < instance.num_patients(); ++i) {
    if (plan[i]) {
      if (plan[i]->day > day) total += pen.p(i, plan[i]->day);
      total += pen.q(i) * (cells - 1);
    } else {
      total += pen.q(i) * cells;
    }
  }
  return total;
}

Rational NoShowScenarioCost(const Instance& instance, const PenaltyTable& pen,
                            const Assignment& plan) {
  return NominalObjective(instance, pen, plan);
}

}  // namespace orsched
