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

#include "orsched/core/schedule.hpp"

#include <algorithm>
#include <stdexcept>

namespace orsched {

NominalSchedule MakeNominalSchedule(
    const Instance& instance, Assignment assignment,
    const std::vector<std::vector<int>>& orders) {
  const int rooms = instance.rooms;
  const int robust = instance.num_robust_days();
  if (static_cast<int>(orders.size()) != robust * rooms) {
    throw std::invalid_argument("orders must hold one list per (w, room)");
  }
  NominalSchedule schedule;
  schedule.assignment = std::move(assignment);
  schedule.ordering.reserve(orders.size());
  for (int w = 0; w < robust; ++w) {
    const int g = instance.robust_days[w];
    for (int j = 0; j < rooms; ++j) {
      RoomDayPlan plan;
      plan.day = g;
      plan.room = j;
      plan.patients = orders[static_cast<std::size_t>(w) * rooms + j];
      int next = 1;
      for (int i : plan.patients) {
        plan.start_slots.push_back(next);
        next += instance.patients[i].Duration(g, j);
      }
      plan.release = plan.patients.empty() ? 0 : next;
      schedule.ordering.push_back(std::move(plan));
    }
  }
  return schedule;
}

std::vector<std::vector<int>> ShortestFirstOrders(const Instance& instance,
                                                  const Assignment& assignment) {
  const int rooms = instance.rooms;
  std::vector<std::vector<int>> orders(
      static_cast<std::size_t>(instance.num_robust_days()) * rooms);
  for (int i = 0; i < instance.num_patients(); ++i) {
    if (!assignment[i]) continue;
    const auto w = instance.RobustIndex(assignment[i]->day);
    if (!w) continue;
    orders[static_cast<std::size_t>(*w) * rooms + assignment[i]->room]
        .push_back(i);
  }
  for (int w = 0; w < instance.num_robust_days(); ++w) {
    const int g = instance.robust_days[w];
    for (int j = 0; j < rooms; ++j) {
      auto& list = orders[static_cast<std::size_t>(w) * rooms + j];
      std::stable_sort(list.begin(), list.end(), [&](int a, int b) {
        return instance.patients[a].Duration(g, j) <
               instance.patients[b].Duration(g, j);
      });
    }
  }
  return orders;
}

const char* ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasibleTimeLimit: return "feasible_time_limit";
    case SolveStatus::kTimeLimitNoSolution: return "time_limit_no_solution";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kError: return "error";
  }
  return "error";
}

SolveStatus ParseSolveStatus(const std::string& text) {
  for (SolveStatus s :
       {SolveStatus::kOptimal, SolveStatus::kFeasibleTimeLimit,
        SolveStatus::kTimeLimitNoSolution, SolveStatus::kInfeasible,
        SolveStatus::kError}) {
    if (text == ToString(s)) return s;
  }
  throw std::invalid_argument("unknown solve status '" + text + "'");
}

const char* ToString(PipelineVariant variant) {
  return variant == PipelineVariant::kWarmStart ? "warm-start" : "heuristic";
}

PipelineVariant ParsePipelineVariant(const std::string& text) {
  if (text == "warm-start") return PipelineVariant::kWarmStart;
  if (text == "heuristic") return PipelineVariant::kHeuristic;
  throw std::invalid_argument("unknown pipeline variant '" + text + "'");
}

namespace {

template <typename Key>
const BackupPlan* FindByKey(const std::vector<BackupPlan>& plans,
                            const Key& key) {
  auto it = std::lower_bound(
      plans.begin(), plans.end(), key,
      [](const BackupPlan& plan, const Key& k) {
        return std::get<Key>(plan.key) < k;
      });
  if (it == plans.end() || std::get<Key>(it->key) != key) return nullptr;
  return &*it;
}

}  // namespace

const BackupPlan* PipelineRun::FindEmergency(const EmergencyKey& key) const {
  return FindByKey(emergency_backups, key);
}

const BackupPlan* PipelineRun::FindNoShow(const NoShowKey& key) const {
  return FindByKey(noshow_backups, key);
}

}  // namespace orsched
