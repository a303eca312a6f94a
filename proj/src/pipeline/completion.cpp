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

#include "orsched/pipeline/completion.hpp"

#include <algorithm>
#include <optional>
#include <variant>

#include "orsched/validate/validator.hpp"

namespace orsched {
namespace {

using Cell = Placement;

int Duration(const Instance& instance, int i, const Cell& c) {
  return instance.patients[i].Duration(c.day, c.room);
}

DayRoomGrid<int> LoadOf(const Instance& instance, const Assignment& plan) {
  DayRoomGrid<int> load(instance.horizon_days, instance.rooms, 0);
  for (int i = 0; i < instance.num_patients(); ++i) {
    if (plan[i]) load(plan[i]->day, plan[i]->room) += Duration(instance, i, *plan[i]);
  }
  return load;
}

std::vector<Cell> CellsOn(const Instance& instance, int i, int from, int to) {
  std::vector<Cell> out;
  for (int d = std::max(0, from); d < std::min(to, instance.horizon_days); ++d) {
    for (int j = 0; j < instance.rooms; ++j) {
      if (instance.patients[i].Compatible(d, j)) out.push_back(Cell{d, j});
    }
  }
  return out;
}

// A plan under construction with per-cell load limits.
class PlanBuilder {
 public:
  PlanBuilder(const Instance& instance, Assignment plan, DayRoomGrid<int> limit)
      : instance_(instance), plan_(std::move(plan)),
        load_(LoadOf(instance, plan_)), limit_(std::move(limit)) {}

  bool Fits(int i, const Cell& c) const {
    return load_(c.day, c.room) + Duration(instance_, i, c) <= limit_(c.day, c.room);
  }
  bool WithinLimits() const {
    for (int d = 0; d < instance_.horizon_days; ++d) {
      for (int j = 0; j < instance_.rooms; ++j) {
        if (load_(d, j) > limit_(d, j)) return false;
      }
    }
    return true;
  }
  void Remove(int i) {
    if (!plan_[i]) return;
    load_(plan_[i]->day, plan_[i]->room) -= Duration(instance_, i, *plan_[i]);
    plan_[i].reset();
  }
  void Put(int i, const Cell& c) {
    Remove(i);
    plan_[i] = c;
    load_(c.day, c.room) += Duration(instance_, i, c);
  }

  // Places i in the first candidate cell with room. Failing that, empties
  // enough of one candidate cell by moving `movable` patients, longest
  // first, to their next free cell within their window, or out of the plan.
  bool Place(int i, const std::vector<Cell>& cells,
             const std::vector<char>& movable, const Assignment& nominal) {
    for (const Cell& c : cells) {
      if (Fits(i, c)) {
        Put(i, c);
        return true;
      }
    }
    for (const Cell& c : cells) {
      std::vector<int> occupants;
      for (int k = 0; k < instance_.num_patients(); ++k) {
        if (k != i && movable[k] && plan_[k] && *plan_[k] == c) {
          occupants.push_back(k);
        }
      }
      std::stable_sort(occupants.begin(), occupants.end(), [&](int a, int b) {
        return Duration(instance_, a, c) > Duration(instance_, b, c);
      });
      int free = limit_(c.day, c.room) - load_(c.day, c.room);
      std::size_t taken = 0;
      while (free < Duration(instance_, i, c) && taken < occupants.size()) {
        free += Duration(instance_, occupants[taken++], c);
      }
      if (free < Duration(instance_, i, c)) continue;
      occupants.resize(taken);
      for (int k : occupants) Remove(k);
      Put(i, c);
      for (int k : occupants) {
        const int d = nominal[k]->day;
        for (const Cell& other :
             CellsOn(instance_, k, d, d + instance_.max_delay + 1)) {
          if (other != c && Fits(k, other)) {
            Put(k, other);
            break;
          }
        }
      }
      return true;
    }
    return false;
  }

  const Assignment& plan() const { return plan_; }
  Assignment Release() { return std::move(plan_); }

 private:
  const Instance& instance_;
  Assignment plan_;
  DayRoomGrid<int> load_;
  DayRoomGrid<int> limit_;
};

DayRoomGrid<int> Limits(const Instance& instance, int g) {
  DayRoomGrid<int> limit(instance.horizon_days, instance.rooms, 0);
  for (int d = 0; d < instance.horizon_days; ++d) {
    for (int j = 0; j < instance.rooms; ++j) {
      // Days before g carry no capacity rows in a back-up plan.
      limit(d, j) = d < g ? 1 << 20
                          : instance.capacity(d, j) +
                                (d == g ? instance.overtime : 0);
    }
  }
  return limit;
}

// Outcome of one greedy attempt: a plan, or the patient whose removal from
// the nominal schedule should make the scenario feasible.
struct Attempt {
  std::optional<Assignment> plan;
  int culprit = -1;
};

Attempt EmergencyPlan(const Instance& instance, const NominalSchedule& nominal,
                      const std::vector<int>& start, int w, int h, int l,
                      int eta) {
  const int g = instance.robust_days[w];
  const Assignment& x = nominal.assignment;
  DayRoomGrid<int> limit = Limits(instance, g);
  limit(g, eta) -= EmergencyReduction(instance, g, eta, h, l);

  Assignment base = x;
  std::vector<int> impacted;
  for (int i = 0; i < instance.num_patients(); ++i) {
    if (x[i] && x[i]->day == g && start[i] > h) {
      impacted.push_back(i);
      base[i].reset();
    }
  }
  PlanBuilder builder(instance, std::move(base), limit);
  if (!builder.WithinLimits()) {
    // Patients already running at h overfill the emergency room: the last
    // one to start goes.
    const RoomDayPlan& room = nominal.Ordering(w, eta, instance.rooms);
    int culprit = -1;
    for (std::size_t k = 0; k < room.patients.size(); ++k) {
      if (room.start_slots[k] <= h) culprit = room.patients[k];
    }
    return {std::nullopt, culprit};
  }
  std::stable_sort(impacted.begin(), impacted.end(),
                   [&](int a, int b) { return start[a] < start[b]; });
  std::vector<char> movable(instance.num_patients(), 0);
  for (int i = 0; i < instance.num_patients(); ++i) {
    movable[i] = x[i] && x[i]->day > g;
  }
  for (int i : impacted) {
    std::vector<Cell> cells{*x[i]};
    for (const Cell& c : CellsOn(instance, i, g, g + instance.max_delay)) {
      if (c != *x[i]) cells.push_back(c);
    }
    if (!builder.Place(i, cells, movable, x)) return {std::nullopt, i};
  }
  return {builder.Release(), -1};
}

Attempt NoShowPlan(const Instance& instance, const Assignment& x, int g, int b,
                   std::optional<int> sub) {
  const int room = x[b]->room;
  Assignment base = x;
  base[b].reset();
  if (sub) base[*sub] = Cell{g, room};
  PlanBuilder builder(instance, std::move(base), Limits(instance, g));
  if (!builder.WithinLimits()) return {std::nullopt, b};
  std::vector<char> movable(instance.num_patients(), 0);
  for (int i = 0; i < instance.num_patients(); ++i) {
    movable[i] = x[i] && x[i]->day > g && i != b && (!sub || i != *sub);
  }
  std::vector<Cell> cells;
  if (instance.noshow_mode == NoShowMode::kFixedDelay) {
    const int target = g + instance.fixed_delay;
    cells = CellsOn(instance, b, target, target + 1);
  } else {
    cells = CellsOn(instance, b, g + 1, g + instance.max_delay);
  }
  if (!builder.Place(b, cells, movable, x)) return {std::nullopt, b};
  return {builder.Release(), -1};
}

// One greedy pass. Returns the solution, or the patient to take out.
std::variant<FullSolution, int> Greedy(const ScheduleModel& model,
                                       const Assignment& x) {
  const Instance& instance = model.instance();
  const int W = instance.num_robust_days();
  const int J = instance.rooms;
  const int H = instance.slots_per_day;
  const int L = instance.num_lengths();
  const int I = instance.num_patients();

  FullSolution sol;
  sol.nominal = x;
  sol.orders = ShortestFirstOrders(instance, x);
  const NominalSchedule nominal = MakeNominalSchedule(instance, x, sol.orders);
  if (!model.Has(Block::kD)) return sol;

  std::vector<int> start(I, 0);
  for (const RoomDayPlan& room : nominal.ordering) {
    for (std::size_t k = 0; k < room.patients.size(); ++k) {
      start[room.patients[k]] = room.start_slots[k];
    }
  }

  sol.emergency_room.assign(static_cast<std::size_t>(H) * W, 0);
  sol.emergency_plans.assign(static_cast<std::size_t>(H) * W * L, {});
  sol.dropped.assign(sol.emergency_plans.size(), {});
  for (int h = 0; h < H; ++h) {
    for (int w = 0; w < W; ++w) {
      std::vector<std::pair<int, int>> rooms;  // (first availability, room)
      for (int j = 0; j < J; ++j) {
        rooms.emplace_back(
            FirstAvailability(instance, nominal.Ordering(w, j, J), h).lo, j);
      }
      std::sort(rooms.begin(), rooms.end());
      const int eta = rooms.front().second;
      sol.emergency_room[h * W + w] = eta;
      if (!model.Has(Block::kE)) continue;
      for (int l = 0; l < L; ++l) {
        Attempt a = EmergencyPlan(instance, nominal, start, w, h, l, eta);
        if (!a.plan) return a.culprit;
        const std::size_t at = (static_cast<std::size_t>(h) * W + w) * L + l;
        sol.dropped[at] = MinimalDropped(instance, x, *a.plan);
        sol.emergency_plans[at] = std::move(*a.plan);
      }
    }
  }
  if (!model.Has(Block::kG)) return sol;

  sol.substitutes.assign(static_cast<std::size_t>(W) * J, std::nullopt);
  sol.noshow_plans.assign(static_cast<std::size_t>(I) * W, x);
  const PenaltyTable& pen = model.penalties();
  for (int w = 0; w < W; ++w) {
    const int g = instance.robust_days[w];
    std::vector<char> used(I, 0);
    for (int j = 0; j < J; ++j) {
      std::vector<int> absent;
      for (int b = 0; b < I; ++b) {
        if (x[b] && *x[b] == Cell{g, j}) absent.push_back(b);
      }
      std::vector<int> candidates;
      for (int s = 0; s < I; ++s) {
        if (!used[s] && x[s] && x[s]->day == g + 1 &&
            instance.patients[s].Compatible(g, j)) {
          candidates.push_back(s);
        }
      }
      std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
        return pen.p(a, g + 1) - pen.p(a, g) > pen.p(b, g + 1) - pen.p(b, g);
      });
      std::vector<std::optional<int>> options(candidates.begin(),
                                              candidates.end());
      options.push_back(std::nullopt);
      for (const std::optional<int>& sub : options) {
        std::vector<Assignment> plans;
        int culprit = -1;
        for (int b : absent) {
          Attempt a = NoShowPlan(instance, x, g, b, sub);
          if (!a.plan) {
            culprit = a.culprit;
            break;
          }
          plans.push_back(std::move(*a.plan));
        }
        if (culprit >= 0) {
          if (!sub) return culprit;
          continue;
        }
        for (std::size_t k = 0; k < absent.size(); ++k) {
          sol.noshow_plans[static_cast<std::size_t>(absent[k]) * W + w] =
              std::move(plans[k]);
        }
        sol.substitutes[static_cast<std::size_t>(w) * J + j] = sub;
        if (sub) used[*sub] = 1;
        break;
      }
    }
  }
  return sol;
}

// Longest patient of the fullest robust-day room.
int FullestRoomLongest(const Instance& instance, const Assignment& x) {
  const DayRoomGrid<int> load = LoadOf(instance, x);
  int best_load = -1;
  Cell best{};
  for (int g : instance.robust_days) {
    for (int j = 0; j < instance.rooms; ++j) {
      if (load(g, j) > best_load) {
        best_load = load(g, j);
        best = Cell{g, j};
      }
    }
  }
  int culprit = -1;
  for (int i = 0; i < instance.num_patients(); ++i) {
    if (x[i] && *x[i] == best &&
        (culprit < 0 ||
         Duration(instance, i, best) >= Duration(instance, culprit, best))) {
      culprit = i;
    }
  }
  return culprit;
}

}  // namespace

Completion CompleteSchedule(const ScheduleModel& model, Assignment nominal) {
  const Instance& instance = model.instance();
  Completion out;
  for (;;) {
    auto result = Greedy(model, nominal);
    int culprit = -1;
    if (auto* sol = std::get_if<FullSolution>(&result)) {
      const std::vector<double> values = model.Encode(*sol);
      const auto violations = model.model().Violations(values, 1e-6);
      if (violations.empty()) {
        out.solution = std::move(*sol);
        return out;
      }
      out.repaired_families.push_back(
          violations.front().row >= 0
              ? model.model().row_tag(violations.front().row).family
              : "column");
      culprit = FullestRoomLongest(instance, nominal);
    } else {
      culprit = std::get<int>(result);
    }
    if (culprit < 0 || !nominal[culprit]) {
      throw ModelError("completion could not repair the nominal schedule");
    }
    nominal[culprit].reset();
    out.unscheduled.push_back(culprit);
  }
}

}  // namespace orsched
