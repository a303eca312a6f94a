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
#include <string>
#include <utility>
#include <vector>

#include "orsched/core/instance.hpp"

namespace orsched {

// Synthetic waiting-list generator. The default duration histograms and
// urgency mix are assumed values, not measured ones.
struct GeneratorSpec {
  std::uint64_t seed = 1;
  int n_patients = 40;
  char group = 'A';
  int horizon = 14;
  int rooms = 2;
  int slots_per_day = 24;
  // (duration in slots, weight)
  std::vector<std::pair<int, double>> duration_histogram;
  std::vector<double> urgency_mix;  // one share per class, sums to 1
  std::vector<int> deadlines;       // days, one per class

  // "40 A"-style identifier of the patient list.
  std::string ListId() const;
  // "40 A 14x2"-style cell name.
  std::string CellName() const;
};

class InvalidSpec : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::pair<int, double>> DefaultDurationHistogram(char group);
std::vector<double> DefaultUrgencyMix();
std::vector<int> DefaultDeadlines();

// Default spec for one grid cell. The seed depends only on the list size and
// group, so the four (horizon, rooms) cells of a list share its patients.
GeneratorSpec DefaultSpec(int n_patients, char group, int horizon, int rooms);

// Days 6, 7, 12, 14, ... (1-based multiples of 6 or 7) are closed.
bool IsWeekend(int day_one_based);

// Throws InvalidSpec. Deterministic for a fixed spec.
Instance Generate(const GeneratorSpec& spec);

// sizes x groups A-D x horizons {14, 28} x rooms {2, 3}.
std::vector<GeneratorSpec> ExperimentGrid(
    const std::vector<int>& sizes = {40, 80, 120});

}  // namespace orsched
