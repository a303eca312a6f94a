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

#include <vector>

#include "orsched/core/instance.hpp"
#include "orsched/core/rational.hpp"
#include "orsched/core/schedule.hpp"

namespace orsched {

// p_id: penalty for operating patient i on day d; q_i: penalty for not
// operating i within the horizon. Days are 1-based in the formulas.
class PenaltyTable {
 public:
  PenaltyTable() = default;
  PenaltyTable(int patients, int days);

  const Rational& p(int i, int d) const { return p_[Offset(i, d)]; }
  const Rational& q(int i) const { return q_[i]; }
  Rational& p(int i, int d) { return p_[Offset(i, d)]; }
  Rational& q(int i) { return q_[i]; }

  int patients() const { return patients_; }
  int days() const { return days_; }

 private:
  std::size_t Offset(int i, int d) const {
    return static_cast<std::size_t>(i) * days_ + d;
  }
  int patients_ = 0;
  int days_ = 0;
  std::vector<Rational> p_;
  std::vector<Rational> q_;
};

// p_id = (d + max{m_i + d - l_i, 0}) u_i and
// q_i = ((m_i + |D| + 1) + max{m_i + |D| + 1 - l_i, 0}) u_i, u_i = 360 / l_i.
// Throws InvalidInstance if some deadline is not positive.
PenaltyTable ComputePenalties(const Instance& instance);

// Nominal objective: for each patient and room, the day penalties of
// the assignment plus q_i for every (day) cell left empty.
Rational NominalObjective(const Instance& instance, const PenaltyTable& pen,
                          const Assignment& x);

// Scenario term of the emergency objective before normalization: only
// days after the emergency day carry p, every empty (day, room) cell carries q.
Rational EmergencyScenarioCost(const Instance& instance,
                               const PenaltyTable& pen, int day,
                               const Assignment& plan);

// Scenario term of the no-show objective before normalization.
Rational NoShowScenarioCost(const Instance& instance, const PenaltyTable& pen,
                            const Assignment& plan);

}  // namespace orsched
