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

#include "orsched/validate/brute_force.hpp"

#include <algorithm>
#include <string>

#include "orsched/core/penalties.hpp"
#include "orsched/validate/validator.hpp"

namespace orsched {
namespace {

void CheckSize(const Instance& instance, bool backups) {
  if (instance.num_patients() > kOracleMaxPatients ||
      instance.horizon_days > kOracleMaxDays ||
      instance.rooms > kOracleMaxRooms ||
      (backups && instance.slots_per_day > kOracleMaxSlots)) {
    throw OracleRefused("instance too large for exhaustive search: " +
                        std::to_string(instance.num_patients()) +
                        " patients, " + std::to_string(instance.horizon_days) +
                        " days, " + std::to_string(instance.rooms) +
                        " rooms, " + std::to_string(instance.slots_per_day) +
                        " slots");
  }
}

// One patient whose placement is searched, with a cost per option.
struct Variable {
  int patient = 0;
  std::vector<std::optional<Placement>> domain;
  std::vector<Rational> cost;
};

// Depth-first branch and bound over the variables' domains under per-cell
// load limits. Ties keep the first assignment found.
class Search {
 public:
  Search(const Instance& instance, DayRoomGrid<int> load,
         DayRoomGrid<int> limit, std::vector<Variable> vars)
      : instance_(instance), load_(std::move(load)), limit_(std::move(limit)),
        vars_(std::move(vars)), choice_(vars_.size(), 0),
        rest_(vars_.size() + 1, Rational(0)) {
    for (std::size_t k = vars_.size(); k-- > 0;) {
      Rational best = vars_[k].cost.empty() ? Rational(0) : vars_[k].cost[0];
      for (const Rational& c : vars_[k].cost) best = std::min(best, c);
      rest_[k] = rest_[k + 1] + best;
    }
  }

  // Returns false when no option combination fits.
  bool Run() {
    for (int d = 0; d < instance_.horizon_days; ++d) {
      for (int j = 0; j < instance_.rooms; ++j) {
        if (load_(d, j) > limit_(d, j)) return false;
      }
    }
    Visit(0, Rational(0));
    return found_;
  }

  const Rational& best_cost() const { return best_cost_; }
  std::uint64_t nodes() const { return nodes_; }

  // Writes the best options into `plan`.
  void Apply(Assignment& plan) const {
    for (std::size_t k = 0; k < vars_.size(); ++k) {
      plan[vars_[k].patient] = vars_[k].domain[best_[k]];
    }
  }

 private:
  void Visit(std::size_t k, const Rational& cost) {
    ++nodes_;
    if (found_ && cost + rest_[k] >= best_cost_) return;
    if (k == vars_.size()) {
      found_ = true;
      best_cost_ = cost;
      best_ = choice_;
      return;
    }
    const Variable& v = vars_[k];
    const Patient& patient = instance_.patients[v.patient];
    for (std::size_t o = 0; o < v.domain.size(); ++o) {
      const auto& p = v.domain[o];
      int t = 0;
      if (p) {
        t = patient.Duration(p->day, p->room);
        if (load_(p->day, p->room) + t > limit_(p->day, p->room)) continue;
        load_(p->day, p->room) += t;
      }
      choice_[k] = o;
      Visit(k + 1, cost + v.cost[o]);
      if (p) load_(p->day, p->room) -= t;
    }
  }

  const Instance& instance_;
  DayRoomGrid<int> load_;
  DayRoomGrid<int> limit_;
  std::vector<Variable> vars_;
  std::vector<std::size_t> choice_;
  std::vector<Rational> rest_;  // sum of per-variable minimum costs from k on
  std::vector<std::size_t> best_;
  Rational best_cost_{0};
  bool found_ = false;
  std::uint64_t nodes_ = 0;
};

DayRoomGrid<int> CapacityGrid(const Instance& instance) {
  DayRoomGrid<int> limit(instance.horizon_days, instance.rooms, 0);
  for (int d = 0; d < instance.horizon_days; ++d) {
    for (int j = 0; j < instance.rooms; ++j) {
      limit(d, j) = instance.capacity(d, j);
    }
  }
  return limit;
}

// Compatible placements on days [from, to), in (day, room) order.
std::vector<std::optional<Placement>> Placements(const Instance& instance,
                                                 int i, int from, int to) {
  std::vector<std::optional<Placement>> out;
  for (int d = std::max(0, from); d < std::min(to, instance.horizon_days);
       ++d) {
    for (int j = 0; j < instance.rooms; ++j) {
      if (instance.patients[i].Compatible(d, j)) out.push_back(Placement{d, j});
    }
  }
  return out;
}

void AddLoad(const Instance& instance, DayRoomGrid<int>& load, int i,
             const Placement& p) {
  load(p.day, p.room) += instance.patients[i].Duration(p.day, p.room);
}

EmergencyCertificate CertifyEmergency(const Instance& instance,
                                      const NominalSchedule& nominal,
                                      const PenaltyTable& pen,
                                      const EmergencyKey& key) {
  EmergencyCertificate cert;
  cert.key = key;
  const int w = *instance.RobustIndex(key.day);
  const int g = key.day;
  const int h = key.slot;
  std::vector<AvailabilityRange> ranges;
  for (int j = 0; j < instance.rooms; ++j) {
    ranges.push_back(FirstAvailability(
        instance, nominal.Ordering(w, j, instance.rooms), h));
  }
  for (int j = 0; j < instance.rooms; ++j) {
    bool ok = true;
    for (int k = 0; k < instance.rooms; ++k) {
      if (k != j && ranges[j].lo > ranges[k].hi) ok = false;
    }
    if (ok) cert.admissible_rooms.push_back(j);
  }

  std::vector<int> start(instance.num_patients(), 0);
  for (const RoomDayPlan& room : nominal.ordering) {
    for (std::size_t k = 0; k < room.patients.size(); ++k) {
      start[room.patients[k]] = room.start_slots[k];
    }
  }
  const Assignment& x = nominal.assignment;
  for (int eta : cert.admissible_rooms) {
    DayRoomGrid<int> limit = CapacityGrid(instance);
    for (int j = 0; j < instance.rooms; ++j) {
      limit(g, j) += instance.overtime;
    }
    limit(g, eta) -= EmergencyReduction(instance, g, eta, h, key.length);
    DayRoomGrid<int> load(instance.horizon_days, instance.rooms, 0);
    Assignment plan(instance.num_patients());
    std::vector<Variable> vars;
    for (int i = 0; i < instance.num_patients(); ++i) {
      if (!x[i]) continue;
      const int d = x[i]->day;
      if (d < g || (d == g && start[i] <= h)) {
        plan[i] = x[i];
        if (d >= g) AddLoad(instance, load, i, *x[i]);
        continue;
      }
      Variable v;
      v.patient = i;
      if (d == g) {
        v.domain = Placements(instance, i, g, g + instance.max_delay);
        v.cost.assign(v.domain.size(), Rational(0));
      } else {
        for (const auto& p :
             Placements(instance, i, d, instance.horizon_days)) {
          v.domain.push_back(p);
          v.cost.push_back(Rational(p->day > d + instance.max_delay ? 1 : 0));
        }
        v.domain.push_back(std::nullopt);
        v.cost.push_back(Rational(1));
      }
      vars.push_back(std::move(v));
    }
    Search search(instance, std::move(load), std::move(limit),
                  std::move(vars));
    if (!search.Run()) continue;
    const int dropped = static_cast<int>(search.best_cost().numerator());
    if (cert.feasible && dropped >= cert.min_dropped) continue;
    search.Apply(plan);
    BackupPlan witness;
    witness.key = key;
    witness.emergency_room = eta;
    witness.dropped = MinimalDropped(instance, x, plan);
    witness.objective_value = EmergencyScenarioCost(instance, pen, g, plan);
    witness.reassignment = std::move(plan);
    cert.feasible = true;
    cert.min_dropped = dropped;
    cert.witness = std::move(witness);
  }
  return cert;
}

NoShowCertificate CertifyNoShow(const Instance& instance,
                                const NominalSchedule& nominal,
                                const PenaltyTable& pen, const NoShowKey& key) {
  NoShowCertificate cert;
  cert.key = key;
  const Assignment& x = nominal.assignment;
  const int b = key.patient;
  const int g = key.day;
  const int room_b = x[b]->room;

  std::vector<std::optional<int>> candidates;
  for (int s = 0; s < instance.num_patients(); ++s) {
    if (x[s] && x[s]->day == g + 1 &&
        instance.patients[s].Compatible(g, room_b)) {
      candidates.push_back(s);
    }
  }
  candidates.push_back(std::nullopt);
  int best_left_out = 0;
  std::vector<std::optional<Placement>> b_domain;
  if (instance.noshow_mode == NoShowMode::kFixedDelay) {
    const int target = g + instance.fixed_delay;
    b_domain = Placements(instance, b, target, target + 1);
  } else {
    b_domain = Placements(instance, b, g + 1, g + instance.max_delay);
  }

  for (const std::optional<int>& sub : candidates) {
    SubstituteOption option;
    option.substitute = sub;
    DayRoomGrid<int> limit = CapacityGrid(instance);
    for (int j = 0; j < instance.rooms; ++j) {
      limit(g, j) += instance.overtime;
    }
    DayRoomGrid<int> load(instance.horizon_days, instance.rooms, 0);
    Assignment plan(instance.num_patients());
    std::vector<Variable> vars;
    for (int i = 0; i < instance.num_patients(); ++i) {
      if (!x[i]) continue;
      const int d = x[i]->day;
      if (sub && i == *sub) {
        plan[i] = Placement{g, room_b};
        AddLoad(instance, load, i, *plan[i]);
        continue;
      }
      if (i == b) {
        Variable v;
        v.patient = i;
        v.domain = b_domain;
        v.cost.assign(v.domain.size(), Rational(0));
        vars.push_back(std::move(v));
        continue;
      }
      if (d <= g) {
        plan[i] = x[i];
        if (d == g) AddLoad(instance, load, i, *x[i]);
        continue;
      }
      Variable v;
      v.patient = i;
      v.domain = Placements(instance, i, d, instance.horizon_days);
      v.cost.assign(v.domain.size(), Rational(0));
      v.domain.push_back(std::nullopt);
      v.cost.push_back(Rational(1));
      vars.push_back(std::move(v));
    }
    Search search(instance, std::move(load), std::move(limit),
                  std::move(vars));
    option.feasible = search.Run();
    if (option.feasible) {
      option.min_left_out = static_cast<int>(search.best_cost().numerator());
      if (!cert.feasible || option.min_left_out < best_left_out) {
        search.Apply(plan);
        BackupPlan witness;
        witness.key = key;
        witness.substitute = sub;
        witness.objective_value = NoShowScenarioCost(instance, pen, plan);
        witness.reassignment = std::move(plan);
        cert.feasible = true;
        best_left_out = option.min_left_out;
        cert.witness = std::move(witness);
      }
    }
    cert.options.push_back(option);
  }
  return cert;
}

}  // namespace

NominalOptimum BruteForceNominal(const Instance& instance) {
  CheckSize(instance, false);
  const PenaltyTable pen = ComputePenalties(instance);
  const Rational cells(instance.horizon_days * instance.rooms);
  std::vector<Variable> vars;
  for (int i = 0; i < instance.num_patients(); ++i) {
    Variable v;
    v.patient = i;
    v.domain = Placements(instance, i, 0, instance.horizon_days);
    for (const auto& p : v.domain) {
      v.cost.push_back(pen.p(i, p->day) + pen.q(i) * (cells - 1));
    }
    v.domain.push_back(std::nullopt);
    v.cost.push_back(pen.q(i) * cells);
    vars.push_back(std::move(v));
  }
  Search search(instance,
                DayRoomGrid<int>(instance.horizon_days, instance.rooms, 0),
                CapacityGrid(instance), std::move(vars));
  search.Run();
  NominalOptimum out;
  out.assignment.resize(instance.num_patients());
  search.Apply(out.assignment);
  out.objective = search.best_cost();
  out.nodes = search.nodes();
  return out;
}

BackupCertificates BruteForceBackups(const Instance& instance,
                                     const NominalSchedule& nominal) {
  CheckSize(instance, true);
  const PenaltyTable pen = ComputePenalties(instance);
  BackupCertificates out;
  for (int g : instance.robust_days) {
    for (int h = 0; h < instance.slots_per_day; ++h) {
      for (int l = 0; l < instance.num_lengths(); ++l) {
        out.emergencies.push_back(
            CertifyEmergency(instance, nominal, pen, EmergencyKey{h, g, l}));
      }
    }
    for (int b = 0; b < instance.num_patients(); ++b) {
      if (nominal.assignment[b] && nominal.assignment[b]->day == g) {
        out.noshows.push_back(
            CertifyNoShow(instance, nominal, pen, NoShowKey{b, g}));
      }
    }
  }
  std::sort(out.emergencies.begin(), out.emergencies.end(),
            [](const auto& a, const auto& b) { return a.key < b.key; });
  std::sort(out.noshows.begin(), out.noshows.end(),
            [](const auto& a, const auto& b) { return a.key < b.key; });
  return out;
}

}  // namespace orsched
