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

#include "orsched/gen/generator.hpp"

#include <cmath>
#include <numeric>
#include <random>

namespace orsched {

std::string GeneratorSpec::ListId() const {
  return std::to_string(n_patients) + " " + std::string(1, group);
}

std::string GeneratorSpec::CellName() const {
  return ListId() + " " + std::to_string(horizon) + "x" + std::to_string(rooms);
}

std::vector<std::pair<int, double>> DefaultDurationHistogram(char group) {
  switch (group) {
    case 'A': return {{2, 0.15}, {3, 0.20}, {4, 0.25}, {5, 0.15}, {6, 0.15}, {8, 0.10}};
    case 'B': return {{6, 0.15}, {8, 0.25}, {10, 0.20}, {12, 0.20}, {16, 0.20}};
    case 'C': return {{4, 0.20}, {6, 0.30}, {8, 0.30}, {10, 0.20}};
    case 'D': return {{1, 0.10}, {2, 0.30}, {3, 0.30}, {4, 0.20}, {6, 0.10}};
  }
  throw InvalidSpec(std::string("unknown patient group '") + group + "'");
}

std::vector<double> DefaultUrgencyMix() { return {0.10, 0.20, 0.30, 0.25, 0.15}; }

std::vector<int> DefaultDeadlines() { return {8, 30, 60, 180, 360}; }

GeneratorSpec DefaultSpec(int n_patients, char group, int horizon, int rooms) {
  GeneratorSpec spec;
  spec.n_patients = n_patients;
  spec.group = group;
  spec.horizon = horizon;
  spec.rooms = rooms;
  spec.seed = 1000003ULL * static_cast<std::uint64_t>(n_patients) +
              static_cast<std::uint64_t>(group);
  spec.duration_histogram = DefaultDurationHistogram(group);
  spec.urgency_mix = DefaultUrgencyMix();
  spec.deadlines = DefaultDeadlines();
  return spec;
}

bool IsWeekend(int day_one_based) {
  return day_one_based % 6 == 0 || day_one_based % 7 == 0;
}

namespace {

void Check(const GeneratorSpec& spec) {
  if (spec.n_patients < 1) throw InvalidSpec("n_patients must be positive");
  if (spec.horizon < 2) throw InvalidSpec("horizon must be at least 2 days");
  if (spec.rooms < 1) throw InvalidSpec("rooms must be positive");
  if (spec.slots_per_day < 1) throw InvalidSpec("slots_per_day must be positive");
  if (spec.duration_histogram.empty()) {
    throw InvalidSpec("duration_histogram must not be empty");
  }
  for (const auto& [slots, weight] : spec.duration_histogram) {
    if (slots < 1) throw InvalidSpec("durations must be >= 1 slot");
    if (weight < 0) throw InvalidSpec("histogram weights must be >= 0");
  }
  if (spec.urgency_mix.empty() ||
      spec.urgency_mix.size() != spec.deadlines.size()) {
    throw InvalidSpec("urgency_mix and deadlines must have equal length");
  }
  const double total =
      std::accumulate(spec.urgency_mix.begin(), spec.urgency_mix.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) {
    throw InvalidSpec("urgency_mix shares must sum to 1");
  }
  for (int l : spec.deadlines) {
    if (l < 1) throw InvalidSpec("deadlines must be positive");
  }
}

}  // namespace

Instance Generate(const GeneratorSpec& spec) {
  Check(spec);
  std::mt19937_64 rng(spec.seed);
  std::vector<double> weights;
  for (const auto& bin : spec.duration_histogram) weights.push_back(bin.second);
  std::discrete_distribution<int> duration_bin(weights.begin(), weights.end());
  std::discrete_distribution<int> urgency_class(spec.urgency_mix.begin(),
                                                spec.urgency_mix.end());

  Instance instance;
  instance.name = spec.CellName();
  instance.horizon_days = spec.horizon;
  instance.rooms = spec.rooms;
  instance.slots_per_day = spec.slots_per_day;
  instance.robust_days = {0};
  instance.capacity =
      DayRoomGrid<int>(spec.horizon, spec.rooms, spec.slots_per_day);
  instance.emergency_lengths = {4, 8, 16};
  instance.overtime = 4;
  instance.max_delay = 7;
  instance.fixed_delay = 2;
  instance.noshow_mode = NoShowMode::kFixedDelay;

  for (int k = 0; k < spec.n_patients; ++k) {
    Patient p;
    p.id = "P" + std::to_string(k + 1);
    const int t = spec.duration_histogram[duration_bin(rng)].first;
    p.deadline_days = spec.deadlines[urgency_class(rng)];
    p.waited_days =
        std::uniform_int_distribution<int>(0, p.deadline_days)(rng);
    p.durations = DayRoomGrid<int>(spec.horizon, spec.rooms, t);
    p.compatibility = DayRoomGrid<char>(spec.horizon, spec.rooms, 1);
    for (int d = 0; d < spec.horizon; ++d) {
      if (!IsWeekend(d + 1)) continue;
      for (int j = 0; j < spec.rooms; ++j) p.compatibility(d, j) = 0;
    }
    instance.patients.push_back(std::move(p));
  }
  instance.Validate();
  return instance;
}

std::vector<GeneratorSpec> ExperimentGrid(const std::vector<int>& sizes) {
  std::vector<GeneratorSpec> grid;
  for (int n : sizes) {
    for (char group : {'A', 'B', 'C', 'D'}) {
      for (int horizon : {14, 28}) {
        for (int rooms : {2, 3}) {
          grid.push_back(DefaultSpec(n, group, horizon, rooms));
        }
      }
    }
  }
  return grid;
}

}  // namespace orsched
