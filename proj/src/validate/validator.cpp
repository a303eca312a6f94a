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

#include "orsched/validate/validator.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "orsched/core/penalties.hpp"

namespace orsched {
namespace {

std::string Day(int d) { return "day " + std::to_string(d + 1); }
std::string Room(int j) { return "room " + std::to_string(j + 1); }

std::string Who(const Instance& instance, int i) {
  return "patient " + instance.patients[i].id;
}

bool InGrid(const Instance& instance, const Placement& p) {
  return p.day >= 0 && p.day < instance.horizon_days && p.room >= 0 &&
         p.room < instance.rooms;
}

// Shape, grid bounds and compatibility of an assignment. Returns false when
// the shape is unusable for further checks.
bool CheckPlacements(const Instance& instance, const Assignment& x,
                     ValidationReport& report) {
  if (static_cast<int>(x.size()) != instance.num_patients()) {
    report.Add("uniqueness", {},
               "assignment lists " + std::to_string(x.size()) +
                   " patients, instance has " +
                   std::to_string(instance.num_patients()));
    return false;
  }
  bool ok = true;
  for (int i = 0; i < instance.num_patients(); ++i) {
    if (!x[i]) continue;
    if (!InGrid(instance, *x[i])) {
      report.Add("uniqueness", {i}, Who(instance, i) + " placed off the grid");
      ok = false;
      continue;
    }
    if (!instance.patients[i].Compatible(x[i]->day, x[i]->room)) {
      report.Add("compatibility", {i, x[i]->day, x[i]->room},
                 Who(instance, i) + " is not compatible with " +
                     Day(x[i]->day) + ", " + Room(x[i]->room));
    }
  }
  return ok;
}

// Per-(day, room) load of an assignment.
DayRoomGrid<int> Loads(const Instance& instance, const Assignment& x) {
  DayRoomGrid<int> load(instance.horizon_days, instance.rooms, 0);
  for (int i = 0; i < instance.num_patients(); ++i) {
    if (x[i]) {
      load(x[i]->day, x[i]->room) +=
          instance.patients[i].Duration(x[i]->day, x[i]->room);
    }
  }
  return load;
}

std::vector<int> StartSlots(const Instance& instance,
                            const NominalSchedule& nominal) {
  std::vector<int> start(instance.num_patients(), 0);
  for (const RoomDayPlan& room : nominal.ordering) {
    for (std::size_t k = 0; k < room.patients.size(); ++k) {
      if (room.patients[k] >= 0 && room.patients[k] < instance.num_patients()) {
        start[room.patients[k]] = room.start_slots[k];
      }
    }
  }
  return start;
}

bool CheckNewPatients(const Instance& instance, const Assignment& nominal,
                      const Assignment& plan, ValidationReport& report) {
  bool ok = true;
  for (int i = 0; i < instance.num_patients(); ++i) {
    if (plan[i] && !nominal[i]) {
      report.Add("new_patient", {i},
                 Who(instance, i) + " is not in the nominal schedule");
      ok = false;
    }
  }
  return ok;
}

}  // namespace

AvailabilityRange FirstAvailability(const Instance& instance,
                                    const RoomDayPlan& room, int h) {
  if (h == 0) return {0, 0};
  if (room.patients.empty() || room.release <= h) return {h, h};
  AvailabilityRange range{instance.slots_per_day + 1, -1};
  for (std::size_t k = 0; k < room.patients.size(); ++k) {
    const int start = room.start_slots[k];
    const int end =
        start + instance.patients[room.patients[k]].Duration(room.day,
                                                             room.room);
    if (start <= h && h <= end) {
      range.lo = std::min(range.lo, end);
      range.hi = std::max(range.hi, end);
    }
  }
  if (range.hi < 0) return {h, h};
  return range;
}

int EmergencyReduction(const Instance& instance, int day, int room, int h,
                       int length) {
  const int cap = instance.capacity(day, room);
  return std::max(0, std::min(instance.emergency_lengths[length], cap - h));
}

std::vector<int> MinimalDropped(const Instance& instance,
                                const Assignment& nominal,
                                const Assignment& plan) {
  std::vector<int> dropped;
  for (int i = 0; i < instance.num_patients(); ++i) {
    if (!nominal[i]) continue;
    const int d = nominal[i]->day;
    const bool kept = plan[i] && plan[i]->day >= d &&
                      plan[i]->day <= d + instance.max_delay;
    if (!kept) dropped.push_back(i);
  }
  return dropped;
}

ValidationReport ValidateNominal(const Instance& instance,
                                 const NominalSchedule& plan) {
  ValidationReport report;
  if (!CheckPlacements(instance, plan.assignment, report)) return report;
  const Assignment& x = plan.assignment;

  const DayRoomGrid<int> load = Loads(instance, x);
  for (int d = 0; d < instance.horizon_days; ++d) {
    for (int j = 0; j < instance.rooms; ++j) {
      if (load(d, j) > instance.capacity(d, j)) {
        report.Add("capacity", {d, j},
                   Day(d) + ", " + Room(j) + " holds " +
                       std::to_string(load(d, j)) + " slots, capacity " +
                       std::to_string(instance.capacity(d, j)));
      }
    }
  }

  std::map<std::pair<int, int>, int> seen_rooms;
  std::vector<int> listed(instance.num_patients(), 0);
  for (const RoomDayPlan& room : plan.ordering) {
    const auto w = instance.RobustIndex(room.day);
    if (!w || room.room < 0 || room.room >= instance.rooms) {
      report.Add("ordering", {room.day, room.room},
                 "ordering given for " + Day(room.day) + ", " +
                     Room(room.room) + ", which is not a robust room-day");
      continue;
    }
    if (++seen_rooms[{room.day, room.room}] > 1) {
      report.Add("ordering", {room.day, room.room},
                 "two orderings for " + Day(room.day) + ", " + Room(room.room));
      continue;
    }
    if (room.start_slots.size() != room.patients.size()) {
      report.Add("start_time", {room.day, room.room},
                 "start slots and patients differ in length");
      continue;
    }
    int expected = 1;
    int previous_end = 0;
    for (std::size_t k = 0; k < room.patients.size(); ++k) {
      const int i = room.patients[k];
      if (i < 0 || i >= instance.num_patients()) {
        report.Add("ordering", {room.day, room.room},
                   "unknown patient in ordering");
        continue;
      }
      ++listed[i];
      if (!x[i] || *x[i] != Placement{room.day, room.room}) {
        report.Add("ordering", {i, room.day, room.room},
                   Who(instance, i) + " is ordered in " + Day(room.day) +
                       ", " + Room(room.room) + " but not assigned there");
      }
      const int start = room.start_slots[k];
      if (start != expected) {
        if (k > 0 && start < previous_end) {
          report.Add("ordering", {i, room.day, room.room},
                     Who(instance, i) + " overlaps the previous surgery");
        } else {
          report.Add("start_time", {i, room.day, room.room},
                     Who(instance, i) + " starts at slot " +
                         std::to_string(start) + ", expected " +
                         std::to_string(expected));
        }
      }
      const int t = instance.patients[i].Duration(room.day, room.room);
      previous_end = start + t;
      expected += t;
    }
    const int release = room.patients.empty() ? 0 : expected;
    if (room.release != release) {
      report.Add("release_time", {room.day, room.room},
                 Day(room.day) + ", " + Room(room.room) + " released at " +
                     std::to_string(room.release) + ", expected " +
                     std::to_string(release));
    }
  }
  for (int w = 0; w < instance.num_robust_days(); ++w) {
    for (int j = 0; j < instance.rooms; ++j) {
      const int g = instance.robust_days[w];
      if (!seen_rooms.count({g, j})) {
        report.Add("ordering", {g, j},
                   "missing ordering for " + Day(g) + ", " + Room(j));
      }
    }
  }
  for (int i = 0; i < instance.num_patients(); ++i) {
    const bool robust = x[i] && instance.RobustIndex(x[i]->day).has_value();
    if (listed[i] > 1) {
      report.Add("uniqueness", {i}, Who(instance, i) + " ordered twice");
    } else if (robust && listed[i] == 0) {
      report.Add("ordering", {i}, Who(instance, i) + " has no position");
    }
  }
  const PenaltyTable pen = ComputePenalties(instance);
  const Rational value = NominalObjective(instance, pen, x);
  if (value != plan.objective_value) {
    report.Add("objective", {},
               "stored objective " + ToString(plan.objective_value) +
                   " differs from " + ToString(value));
  }
  return report;
}

ValidationReport ValidateEmergencyBackup(const Instance& instance,
                                         const NominalSchedule& nominal,
                                         const BackupPlan& plan,
                                         const ValidatorOptions& options) {
  ValidationReport report;
  if (!plan.IsEmergency()) {
    report.Add("scenario_key", {}, "not an emergency plan");
    return report;
  }
  const EmergencyKey key = plan.emergency();
  const auto w = instance.RobustIndex(key.day);
  if (!w || key.slot < 0 || key.slot >= instance.slots_per_day ||
      key.length < 0 || key.length >= instance.num_lengths()) {
    report.Add("scenario_key", {key.slot, key.day, key.length},
               "emergency key outside the enumerated scenarios");
    return report;
  }
  const int g = key.day;
  const int h = key.slot;
  if (!plan.emergency_room || *plan.emergency_room < 0 ||
      *plan.emergency_room >= instance.rooms) {
    report.Add("emergency_room", {h, g}, "emergency room missing");
    return report;
  }
  const int eta = *plan.emergency_room;
  const Assignment& x = nominal.assignment;
  const Assignment& xb = plan.reassignment;
  if (!CheckPlacements(instance, xb, report)) return report;
  CheckNewPatients(instance, x, xb, report);

  // First-available room.
  const AvailabilityRange chosen =
      FirstAvailability(instance, nominal.Ordering(*w, eta, instance.rooms), h);
  for (int k = 0; k < instance.rooms; ++k) {
    if (k == eta) continue;
    const AvailabilityRange other =
        FirstAvailability(instance, nominal.Ordering(*w, k, instance.rooms), h);
    if (chosen.lo > other.hi) {
      report.Add("emergency_room", {h, g, eta, k},
                 Room(eta) + " is available from slot " +
                     std::to_string(chosen.lo) + " but " + Room(k) +
                     " already at " + std::to_string(other.hi));
    }
  }

  const std::vector<int> start = StartSlots(instance, nominal);
  for (int i = 0; i < instance.num_patients(); ++i) {
    if (!x[i]) continue;
    const int d = x[i]->day;
    if (xb[i] && xb[i]->day < d) {
      report.Add("anticipation", {i, xb[i]->day},
                 Who(instance, i) + " moved from " + Day(d) + " to earlier " +
                     Day(xb[i]->day));
    }
    if (d != g) continue;
    bool impacted = start[i] > h;
    if (options.room_local_impact) impacted = impacted && x[i]->room == eta;
    if (impacted) {
      const bool in_window =
          xb[i] && xb[i]->day >= g && xb[i]->day < g + instance.max_delay;
      if (!in_window) {
        report.Add("window", {i, h, g, key.length},
                   Who(instance, i) + " is displaced by the emergency and " +
                       "not rescheduled within " +
                       std::to_string(instance.max_delay) + " days");
      }
    } else if (!xb[i] || *xb[i] != *x[i]) {
      report.Add("retention", {i, h, g, key.length},
                 Who(instance, i) + " starts by slot " + std::to_string(h) +
                     " and must keep " + Day(g) + ", " + Room(x[i]->room));
    }
  }

  std::vector<int> dropped = plan.dropped;
  std::sort(dropped.begin(), dropped.end());
  if (dropped != MinimalDropped(instance, x, xb)) {
    report.Add("dropped", {h, g, key.length},
               "dropped list does not match the patients left outside "
               "their rescheduling window");
  }

  const DayRoomGrid<int> load = Loads(instance, xb);
  for (int j = 0; j < instance.rooms; ++j) {
    const int limit = instance.capacity(g, j) + instance.overtime -
                      (j == eta ? EmergencyReduction(instance, g, j, h,
                                                     key.length)
                                : 0);
    if (load(g, j) > limit) {
      report.Add("emergency_capacity", {j, h, g, key.length},
                 Day(g) + ", " + Room(j) + " holds " +
                     std::to_string(load(g, j)) + " slots, limit " +
                     std::to_string(limit));
    }
    for (int d = g + 1; d < instance.horizon_days; ++d) {
      if (load(d, j) > instance.capacity(d, j)) {
        report.Add("capacity", {j, d, h, g, key.length},
                   Day(d) + ", " + Room(j) + " holds " +
                       std::to_string(load(d, j)) + " slots, capacity " +
                       std::to_string(instance.capacity(d, j)));
      }
    }
  }
  return report;
}

ValidationReport ValidateNoShowBackup(const Instance& instance,
                                      const NominalSchedule& nominal,
                                      const BackupPlan& plan) {
  ValidationReport report;
  if (plan.IsEmergency()) {
    report.Add("scenario_key", {}, "not a no-show plan");
    return report;
  }
  const NoShowKey key = plan.noshow();
  const Assignment& x = nominal.assignment;
  const int b = key.patient;
  const int g = key.day;
  if (b < 0 || b >= instance.num_patients() || !instance.RobustIndex(g) ||
      !x[b] || x[b]->day != g) {
    report.Add("scenario_key", {b, g},
               "no-show key does not name a patient scheduled on a robust day");
    return report;
  }
  const int room_b = x[b]->room;
  const Assignment& xh = plan.reassignment;
  if (!CheckPlacements(instance, xh, report)) return report;
  CheckNewPatients(instance, x, xh, report);

  if (xh[b] && xh[b]->day == g) {
    report.Add("noshow_removal", {b, g},
               Who(instance, b) + " is still operated on " + Day(g));
  }
  if (instance.noshow_mode == NoShowMode::kFixedDelay) {
    const int target = g + instance.fixed_delay;
    if (!xh[b] || xh[b]->day != target) {
      report.Add("noshow_delay", {b, g},
                 Who(instance, b) + " must be rescheduled on " + Day(target));
    }
  } else if (!xh[b] || xh[b]->day <= g ||
             xh[b]->day >= g + instance.max_delay) {
    report.Add("noshow_delay", {b, g},
               Who(instance, b) + " must be rescheduled within " +
                   std::to_string(instance.max_delay) + " days");
  }

  int sub = plan.substitute.value_or(-1);
  if (plan.substitute && (sub < 0 || sub >= instance.num_patients())) {
    report.Add("substitute_provenance", {b, g}, "unknown substitute");
    sub = -1;
  }
  if (sub >= 0) {
    const int s = sub;
    if (!x[s] || x[s]->day != g + 1) {
      report.Add("substitute_provenance", {s, g},
                 Who(instance, s) + " is not scheduled on " + Day(g + 1));
    }
    if (!instance.patients[s].Compatible(g, room_b)) {
      report.Add("substitute_compatibility", {s, g, room_b},
                 Who(instance, s) + " cannot be operated in " + Day(g) + ", " +
                     Room(room_b));
    }
    if (!xh[s] || *xh[s] != Placement{g, room_b}) {
      report.Add("substitute_placement", {s, g, room_b},
                 Who(instance, s) + " must take the free place in " + Day(g) +
                     ", " + Room(room_b));
    }
  } else {
    report.warnings.push_back("no substitute for the no-show of " +
                              instance.patients[b].id + " on " + Day(g));
  }

  for (int i = 0; i < instance.num_patients(); ++i) {
    if (!x[i] || i == b) continue;
    if (i == sub) continue;
    const int d = x[i]->day;
    if (xh[i] && xh[i]->day < d) {
      report.Add("anticipation", {i, xh[i]->day},
                 Who(instance, i) + " moved from " + Day(d) + " to earlier " +
                     Day(xh[i]->day));
    }
    if (d == g && (!xh[i] || *xh[i] != *x[i])) {
      report.Add("retention", {b, g, i},
                 Who(instance, i) + " must keep " + Day(g) + ", " +
                     Room(x[i]->room));
    } else if (d != g && !xh[i]) {
      report.warnings.push_back(Who(instance, i) +
                                " is left out of the no-show plan for " +
                                instance.patients[b].id);
    }
  }

  const DayRoomGrid<int> load = Loads(instance, xh);
  for (int j = 0; j < instance.rooms; ++j) {
    const int limit = instance.capacity(g, j) + instance.overtime;
    if (load(g, j) > limit) {
      report.Add("overtime_capacity", {j, b, g},
                 Day(g) + ", " + Room(j) + " holds " +
                     std::to_string(load(g, j)) + " slots, limit " +
                     std::to_string(limit));
    }
    for (int d = g + 1; d < instance.horizon_days; ++d) {
      if (load(d, j) > instance.capacity(d, j)) {
        report.Add("capacity", {j, d, b, g},
                   Day(d) + ", " + Room(j) + " holds " +
                       std::to_string(load(d, j)) + " slots, capacity " +
                       std::to_string(instance.capacity(d, j)));
      }
    }
  }
  return report;
}

ValidationReport ValidateRun(const PipelineRun& run,
                             const ValidatorOptions& options) {
  const Instance& instance = run.instance;
  ValidationReport report = ValidateNominal(instance, run.plan);
  if (!report.ok()) return report;
  const PenaltyTable pen = ComputePenalties(instance);

  std::set<EmergencyKey> emergency_keys;
  for (const BackupPlan& plan : run.emergency_backups) {
    if (!plan.IsEmergency()) {
      report.Add("scenario_key", {}, "no-show plan among emergency plans");
      continue;
    }
    if (!emergency_keys.insert(plan.emergency()).second) {
      report.Add("scenario_key",
                 {plan.emergency().slot, plan.emergency().day,
                  plan.emergency().length},
                 "duplicate emergency plan");
    }
    report.Merge(ValidateEmergencyBackup(instance, run.plan, plan, options));
    if (static_cast<int>(plan.reassignment.size()) == instance.num_patients() &&
        plan.objective_value != EmergencyScenarioCost(instance, pen,
                                                      plan.emergency().day,
                                                      plan.reassignment)) {
      report.Add("objective",
                 {plan.emergency().slot, plan.emergency().day,
                  plan.emergency().length},
                 "stored emergency plan objective is not its scenario cost");
    }
  }
  const std::size_t expected_emergencies =
      static_cast<std::size_t>(instance.slots_per_day) *
      instance.num_robust_days() * instance.num_lengths();
  if (emergency_keys.size() != expected_emergencies) {
    report.Add("completeness", {},
               std::to_string(emergency_keys.size()) +
                   " emergency plans, expected " +
                   std::to_string(expected_emergencies));
  }

  std::set<NoShowKey> expected_noshows;
  for (int i = 0; i < instance.num_patients(); ++i) {
    const auto& p = run.plan.assignment[i];
    if (p && instance.RobustIndex(p->day)) {
      expected_noshows.insert(NoShowKey{i, p->day});
    }
  }
  std::set<NoShowKey> noshow_keys;
  std::map<std::pair<int, int>, std::optional<int>> substitute_of_room;
  for (const BackupPlan& plan : run.noshow_backups) {
    if (plan.IsEmergency()) {
      report.Add("scenario_key", {}, "emergency plan among no-show plans");
      continue;
    }
    const NoShowKey key = plan.noshow();
    if (!noshow_keys.insert(key).second) {
      report.Add("scenario_key", {key.patient, key.day},
                 "duplicate no-show plan");
    }
    report.Merge(ValidateNoShowBackup(instance, run.plan, plan));
    if (static_cast<int>(plan.reassignment.size()) == instance.num_patients() &&
        plan.objective_value !=
            NoShowScenarioCost(instance, pen, plan.reassignment)) {
      report.Add("objective", {key.patient, key.day},
                 "stored no-show plan objective is not its scenario cost");
    }
    if (key.patient >= 0 && key.patient < instance.num_patients() &&
        run.plan.assignment[key.patient]) {
      const std::pair<int, int> room{key.day,
                                     run.plan.assignment[key.patient]->room};
      auto [it, inserted] = substitute_of_room.emplace(room, plan.substitute);
      if (!inserted && it->second != plan.substitute) {
        report.Add("substitute_shared", {room.first, room.second},
                   "no-shows in " + Day(room.first) + ", " +
                       Room(room.second) + " name different substitutes");
      }
    }
  }
  if (noshow_keys != expected_noshows) {
    report.Add("completeness", {},
               std::to_string(noshow_keys.size()) + " no-show plans, expected " +
                   std::to_string(expected_noshows.size()));
  }
  return report;
}

}  // namespace orsched
