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

#include "orsched/core/gantt.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace orsched {

const char* ToString(GanttKind kind) {
  switch (kind) {
    case GanttKind::kNominal: return "nominal";
    case GanttKind::kBackup: return "backup";
    case GanttKind::kEmergency: return "emergency";
    case GanttKind::kSubstitute: return "substitute";
  }
  return "nominal";
}

namespace {

using CellKey = std::pair<int, int>;  // (day, room), 0-based

std::map<CellKey, std::vector<int>> GroupByCell(const Assignment& x) {
  std::map<CellKey, std::vector<int>> cells;
  for (int i = 0; i < static_cast<int>(x.size()); ++i) {
    if (x[i]) cells[{x[i]->day, x[i]->room}].push_back(i);
  }
  return cells;
}

class GanttBuilder {
 public:
  GanttBuilder(const Instance& instance, const Assignment& nominal)
      : instance_(instance), nominal_(nominal) {}

  void Add(int i, int day, int room, int start, GanttKind kind) {
    const int offset = nominal_[i] ? day - nominal_[i]->day : 0;
    const bool moved = nominal_[i] && *nominal_[i] != Placement{day, room};
    if (kind == GanttKind::kNominal && moved) kind = GanttKind::kBackup;
    const int t = instance_.patients[i].Duration(day, room);
    entries_.push_back({day + 1, room + 1, instance_.patients[i].id, start,
                        start + t, kind, offset});
  }

  void AddEmergency(int day, int room, int start, int length) {
    entries_.push_back({day + 1, room + 1, "", start, start + length,
                        GanttKind::kEmergency, 0});
  }

  // Packs `patients` back to back from `start`.
  int Pack(const std::vector<int>& patients, int day, int room, int start,
           GanttKind kind) {
    for (int i : patients) {
      Add(i, day, room, start, kind);
      start += instance_.patients[i].Duration(day, room);
    }
    return start;
  }

  std::vector<GanttEntry> Finish() {
    std::sort(entries_.begin(), entries_.end(),
              [](const GanttEntry& a, const GanttEntry& b) {
                return std::tie(a.day, a.room, a.start_slot, a.end_slot) <
                       std::tie(b.day, b.room, b.start_slot, b.end_slot);
              });
    return std::move(entries_);
  }

 private:
  const Instance& instance_;
  const Assignment& nominal_;
  std::vector<GanttEntry> entries_;
};

// Nominal start slot of patient i, or 0 when it has no robust-day ordering.
std::vector<int> NominalStarts(const Instance& instance,
                               const NominalSchedule& plan) {
  std::vector<int> starts(instance.num_patients(), 0);
  for (const RoomDayPlan& room : plan.ordering) {
    for (std::size_t k = 0; k < room.patients.size(); ++k) {
      starts[room.patients[k]] = room.start_slots[k];
    }
  }
  return starts;
}

}  // namespace

std::vector<GanttEntry> NominalGantt(const Instance& instance,
                                     const NominalSchedule& plan) {
  GanttBuilder builder(instance, plan.assignment);
  for (const auto& [cell, patients] : GroupByCell(plan.assignment)) {
    const auto [day, room] = cell;
    if (instance.RobustIndex(day)) continue;
    builder.Pack(patients, day, room, 1, GanttKind::kNominal);
  }
  for (const RoomDayPlan& room : plan.ordering) {
    for (std::size_t k = 0; k < room.patients.size(); ++k) {
      builder.Add(room.patients[k], room.day, room.room, room.start_slots[k],
                  GanttKind::kNominal);
    }
  }
  return builder.Finish();
}

std::vector<GanttEntry> BackupGantt(const Instance& instance,
                                    const NominalSchedule& nominal,
                                    const BackupPlan& plan) {
  const int g = plan.IsEmergency() ? plan.emergency().day : plan.noshow().day;
  const auto w = instance.RobustIndex(g);
  const std::vector<int> starts = NominalStarts(instance, nominal);
  GanttBuilder builder(instance, nominal.assignment);
  auto cells = GroupByCell(plan.reassignment);

  for (const auto& [cell, patients] : cells) {
    const auto [day, room] = cell;
    if (day != g || !w) {
      builder.Pack(patients, day, room, 1, GanttKind::kNominal);
    }
  }
  if (!w) return builder.Finish();

  for (int j = 0; j < instance.rooms; ++j) {
    const auto it = cells.find({g, j});
    const std::vector<int> present =
        it == cells.end() ? std::vector<int>{} : it->second;
    auto is_present = [&](int i) {
      return std::find(present.begin(), present.end(), i) != present.end();
    };
    const RoomDayPlan& room = nominal.Ordering(*w, j, instance.rooms);

    if (plan.IsEmergency()) {
      const EmergencyKey& key = plan.emergency();
      int cursor = 0;
      std::vector<int> rest;
      for (int i : room.patients) {
        if (!is_present(i)) continue;
        if (starts[i] <= key.slot) {
          builder.Add(i, g, j, starts[i], GanttKind::kNominal);
          cursor = std::max(cursor,
                            starts[i] + instance.patients[i].Duration(g, j));
        } else {
          rest.push_back(i);
        }
      }
      for (int i : present) {
        if (std::find(room.patients.begin(), room.patients.end(), i) ==
            room.patients.end()) {
          rest.push_back(i);
        }
      }
      if (plan.emergency_room == j) {
        const int start = std::max(cursor, key.slot);
        const int length = instance.emergency_lengths[key.length];
        builder.AddEmergency(g, j, start, length);
        cursor = start + length;
      }
      cursor = std::max(cursor, 1);
      for (int i : rest) {
        const int start = (nominal.assignment[i] &&
                           nominal.assignment[i]->day == g &&
                           nominal.assignment[i]->room == j)
                              ? std::max(cursor, starts[i])
                              : cursor;
        builder.Add(i, g, j, start, GanttKind::kNominal);
        cursor = start + instance.patients[i].Duration(g, j);
      }
    } else {
      const int b = plan.noshow().patient;
      const bool substitute_here =
          plan.substitute && is_present(*plan.substitute);
      std::vector<int> order;
      bool placed = false;
      for (int i : room.patients) {
        if (i == b && substitute_here) {
          order.push_back(*plan.substitute);
          placed = true;
        } else if (is_present(i)) {
          order.push_back(i);
        }
      }
      for (int i : present) {
        if (std::find(order.begin(), order.end(), i) != order.end()) continue;
        if (substitute_here && i == *plan.substitute && placed) continue;
        order.push_back(i);
      }
      int cursor = 1;
      for (int i : order) {
        const GanttKind kind = (plan.substitute && i == *plan.substitute)
                                   ? GanttKind::kSubstitute
                                   : GanttKind::kNominal;
        builder.Add(i, g, j, cursor, kind);
        cursor += instance.patients[i].Duration(g, j);
      }
    }
  }
  return builder.Finish();
}

}  // namespace orsched
