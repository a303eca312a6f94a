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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "orsched/core/rational.hpp"

namespace orsched {

// Raised when an Instance breaks one of its structural invariants.
class InvalidInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense (day, room) table. Days and rooms are 0-based internally; documents
// and reports use 1-based numbers.
template <typename T>
class DayRoomGrid {
 public:
  DayRoomGrid() = default;
  DayRoomGrid(int days, int rooms, T fill = T{})
      : days_(days), rooms_(rooms),
        cells_(static_cast<std::size_t>(days) * rooms, fill) {}

  int days() const { return days_; }
  int rooms() const { return rooms_; }

  T& operator()(int d, int j) { return cells_[Offset(d, j)]; }
  const T& operator()(int d, int j) const { return cells_[Offset(d, j)]; }

  bool operator==(const DayRoomGrid&) const = default;

 private:
  std::size_t Offset(int d, int j) const {
    return static_cast<std::size_t>(d) * rooms_ + j;
  }

  int days_ = 0;
  int rooms_ = 0;
  std::vector<T> cells_;
};

struct Patient {
  std::string id;
  int deadline_days = 1;  // l_i
  int waited_days = 0;    // m_i
  DayRoomGrid<int> durations;        // t_idj, in slots
  DayRoomGrid<char> compatibility;   // a_idj

  // u_i = 360 / l_i.
  Rational Urgency() const { return Rational(360, deadline_days); }
  int Duration(int d, int j) const { return durations(d, j); }
  bool Compatible(int d, int j) const { return compatibility(d, j) != 0; }

  bool operator==(const Patient&) const = default;
};

enum class NoShowMode { kFixedDelay, kWithinDelay };

struct Placement {
  int day = 0;
  int room = 0;
  bool operator==(const Placement&) const = default;
  auto operator<=>(const Placement&) const = default;
};

struct Instance {
  std::string name;
  std::vector<Patient> patients;
  int horizon_days = 1;           // |D|
  std::vector<int> robust_days;   // W, 0-based day indices
  int rooms = 1;                  // |J|
  DayRoomGrid<int> capacity;      // T_dj
  int slots_per_day = 24;         // |H|, slots 0..|H|-1
  std::vector<int> emergency_lengths{4, 8, 16};  // gamma_l
  int overtime = 4;               // Omega
  int fixed_delay = 2;            // Delta-hat
  int max_delay = 7;              // Delta
  NoShowMode noshow_mode = NoShowMode::kFixedDelay;

  int num_patients() const { return static_cast<int>(patients.size()); }
  int num_robust_days() const { return static_cast<int>(robust_days.size()); }
  int num_lengths() const { return static_cast<int>(emergency_lengths.size()); }

  std::optional<int> PatientIndex(std::string_view id) const;
  // Position of `day` in robust_days, if it is a robust day.
  std::optional<int> RobustIndex(int day) const;

  // Throws InvalidInstance naming the first broken invariant.
  void Validate() const;

  bool operator==(const Instance&) const = default;
};

// |S| = ceil(max T_dj / min t_idj over compatible triples).
int PositionCount(const Instance& instance);

}  // namespace orsched
