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
#include <optional>
#include <stdexcept>
#include <vector>

#include "orsched/core/instance.hpp"
#include "orsched/core/rational.hpp"
#include "orsched/core/schedule.hpp"

namespace orsched {

// Raised when an instance is too large for exhaustive search.
class OracleRefused : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kOracleMaxPatients = 8;
inline constexpr int kOracleMaxDays = 3;
inline constexpr int kOracleMaxRooms = 2;
inline constexpr int kOracleMaxSlots = 8;

struct NominalOptimum {
  Rational objective{0};
  Assignment assignment;
  std::uint64_t nodes = 0;  // search nodes visited
};

// Minimum of the nominal objective over all assignments meeting
// compatibility, capacity and assign-at-most-once.
NominalOptimum BruteForceNominal(const Instance& instance);

struct EmergencyCertificate {
  EmergencyKey key;
  std::vector<int> admissible_rooms;  // rooms meeting the first-available rule
  bool feasible = false;              // some plan passes the validator
  int min_dropped = 0;                // over all valid plans
  std::optional<BackupPlan> witness;  // a valid plan with min_dropped
};

struct SubstituteOption {
  std::optional<int> substitute;
  bool feasible = false;
  int min_left_out = 0;  // nominal patients after day g left unplaced
};

struct NoShowCertificate {
  NoShowKey key;
  std::vector<SubstituteOption> options;  // substitutes, then none
  bool feasible = false;
  // First feasible option with the fewest left out.
  std::optional<BackupPlan> witness;
};

struct BackupCertificates {
  std::vector<EmergencyCertificate> emergencies;  // sorted by key
  std::vector<NoShowCertificate> noshows;         // sorted by key
};

// Searches every scenario's reassignments under the validator's rules.
// Room-aggregated impact reading.
BackupCertificates BruteForceBackups(const Instance& instance,
                                     const NominalSchedule& nominal);

}  // namespace orsched
