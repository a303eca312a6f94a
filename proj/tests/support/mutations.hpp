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

#include <functional>
#include <string>
#include <vector>

#include "orsched/core/instance.hpp"
#include "orsched/core/penalties.hpp"
#include "orsched/core/schedule.hpp"
#include "orsched/validate/validator.hpp"

namespace orsched::test {

// Hand-built schedule with one valid emergency plan and one valid no-show
// plan. Four days, two rooms of 10 slots, 12 slots per day, emergencies of
// 3 or 6 slots, 2 slots of overtime, no-shows return two days later, the
// rescheduling window is 3 days.
//
//   day 1, room 1: A (4) then B (3)    day 1, room 2: C (5)
//   day 2, room 1: S (2), G (1)        day 2, room 2: K (10)
//   day 3, room 2: E (8)               F (3) waits
//
// B cannot use day 2, room 2; G cannot use day 1, room 1.
struct Fixture {
  enum : int { A, B, C, S, E, F, G, K };

  Instance instance;
  NominalSchedule nominal;
  BackupPlan emergency;  // h = 3, day 1, 6 slots: B moves to day 2
  BackupPlan noshow;     // A misses day 1, S takes its place

  Fixture() {
    instance.name = "fixture";
    instance.horizon_days = 4;
    instance.rooms = 2;
    instance.slots_per_day = 12;
    instance.robust_days = {0};
    instance.capacity = DayRoomGrid<int>(4, 2, 10);
    instance.emergency_lengths = {3, 6};
    instance.overtime = 2;
    instance.fixed_delay = 2;
    instance.max_delay = 3;
    const std::vector<std::pair<std::string, int>> patients = {
        {"A", 4}, {"B", 3}, {"C", 5}, {"S", 2},
        {"E", 8}, {"F", 3}, {"G", 1}, {"K", 10}};
    for (const auto& [id, duration] : patients) {
      Patient p;
      p.id = id;
      p.deadline_days = 30;
      p.waited_days = 10;
      p.durations = DayRoomGrid<int>(4, 2, duration);
      p.compatibility = DayRoomGrid<char>(4, 2, 1);
      instance.patients.push_back(std::move(p));
    }
    instance.patients[B].compatibility(1, 1) = 0;
    instance.patients[G].compatibility(0, 0) = 0;
    instance.Validate();

    Assignment x(8);
    x[A] = Placement{0, 0};
    x[B] = Placement{0, 0};
    x[C] = Placement{0, 1};
    x[S] = Placement{1, 0};
    x[G] = Placement{1, 0};
    x[K] = Placement{1, 1};
    x[E] = Placement{2, 1};
    nominal = MakeNominalSchedule(instance, x, {{A, B}, {C}});
    nominal.objective_value =
        NominalObjective(instance, ComputePenalties(instance), x);

    emergency.key = EmergencyKey{3, 0, 1};
    emergency.emergency_room = 0;
    emergency.reassignment = x;
    emergency.reassignment[B] = Placement{1, 0};

    noshow.key = NoShowKey{A, 0};
    noshow.substitute = S;
    noshow.reassignment = x;
    noshow.reassignment[A] = Placement{2, 0};
    noshow.reassignment[S] = Placement{0, 0};
  }
};

enum class PlanKind { kNominal, kEmergency, kNoShow };

struct Mutation {
  std::string name;
  std::string family;  // family the validator must report
  PlanKind kind;
  std::function<void(const Fixture&, NominalSchedule&, BackupPlan&)> apply;
};

// Corruptions of the fixture, each breaking one rule.
inline std::vector<Mutation> Mutations() {
  using F = Fixture;
  using P = Placement;
  auto nominal = [](std::string name, std::string family, auto fn) {
    return Mutation{std::move(name), std::move(family), PlanKind::kNominal,
                    [fn](const F& f, NominalSchedule& n, BackupPlan&) {
                      fn(f, n);
                    }};
  };
  auto emergency = [](std::string name, std::string family, auto fn) {
    return Mutation{std::move(name), std::move(family), PlanKind::kEmergency,
                    [fn](const F&, NominalSchedule&, BackupPlan& p) { fn(p); }};
  };
  auto noshow = [](std::string name, std::string family, auto fn) {
    return Mutation{std::move(name), std::move(family), PlanKind::kNoShow,
                    [fn](const F&, NominalSchedule&, BackupPlan& p) { fn(p); }};
  };
  return {
      nominal("overlapping surgeries", "ordering",
              [](const F&, NominalSchedule& n) {
                n.ordering[0].start_slots[1] = 4;
              }),
      nominal("gap before a surgery", "start_time",
              [](const F&, NominalSchedule& n) {
                n.ordering[0].start_slots[1] = 6;
              }),
      nominal("wrong release", "release_time",
              [](const F&, NominalSchedule& n) { n.ordering[0].release = 9; }),
      nominal("room over capacity", "capacity",
              [](const F&, NominalSchedule& n) {
                n.assignment[F::F] = P{2, 1};
              }),
      nominal("incompatible room", "compatibility",
              [](const F&, NominalSchedule& n) {
                n.assignment[F::G] = P{0, 0};
                n.ordering[0].patients.push_back(F::G);
                n.ordering[0].start_slots.push_back(8);
                n.ordering[0].release = 9;
              }),
      nominal("patient ordered twice", "uniqueness",
              [](const F&, NominalSchedule& n) {
                n.ordering[0].patients.push_back(F::A);
                n.ordering[0].start_slots.push_back(8);
                n.ordering[0].release = 12;
              }),
      nominal("stale objective", "objective",
              [](const F&, NominalSchedule& n) {
                n.objective_value += Rational(1);
              }),
      emergency("busy room chosen", "emergency_room",
                [](BackupPlan& p) { p.emergency_room = 1; }),
      emergency("emergency day over capacity", "emergency_capacity",
                [](BackupPlan& p) { p.reassignment[F::B] = P{0, 0}; }),
      emergency("displaced past the window", "window",
                [](BackupPlan& p) { p.reassignment[F::B] = P{3, 0}; }),
      emergency("early patient moved", "retention",
                [](BackupPlan& p) { p.reassignment[F::A] = P{1, 0}; }),
      emergency("later patient brought forward", "anticipation",
                [](BackupPlan& p) { p.reassignment[F::S] = P{0, 1}; }),
      emergency("waiting patient added", "new_patient",
                [](BackupPlan& p) { p.reassignment[F::F] = P{2, 0}; }),
      emergency("kept patient listed as dropped", "dropped",
                [](BackupPlan& p) { p.dropped = {F::B}; }),
      emergency("left-out patient not listed", "dropped",
                [](BackupPlan& p) { p.reassignment[F::E] = std::nullopt; }),
      emergency("later day over capacity", "capacity",
                [](BackupPlan& p) { p.reassignment[F::B] = P{2, 1}; }),
      emergency("incompatible reschedule", "compatibility",
                [](BackupPlan& p) { p.reassignment[F::B] = P{1, 1}; }),
      emergency("slot outside the day", "scenario_key",
                [](BackupPlan& p) { p.key = EmergencyKey{12, 0, 1}; }),
      noshow("no-show still operated", "noshow_removal",
             [](BackupPlan& p) { p.reassignment[F::A] = P{0, 0}; }),
      noshow("no-show on the wrong day", "noshow_delay",
             [](BackupPlan& p) { p.reassignment[F::A] = P{3, 0}; }),
      noshow("substitute from two days later", "substitute_provenance",
             [](BackupPlan& p) {
               p.substitute = F::E;
               p.reassignment[F::S] = P{1, 0};
               p.reassignment[F::E] = P{0, 0};
             }),
      noshow("substitute in the other room", "substitute_placement",
             [](BackupPlan& p) { p.reassignment[F::S] = P{0, 1}; }),
      noshow("substitute cannot use the room", "substitute_compatibility",
             [](BackupPlan& p) {
               p.substitute = F::G;
               p.reassignment[F::S] = P{1, 0};
               p.reassignment[F::G] = P{0, 0};
             }),
      noshow("substitute beyond overtime", "overtime_capacity",
             [](BackupPlan& p) {
               p.substitute = F::K;
               p.reassignment[F::S] = P{1, 0};
               p.reassignment[F::K] = P{0, 0};
             }),
      noshow("same-day patient moved", "retention",
             [](BackupPlan& p) { p.reassignment[F::B] = P{1, 0}; }),
      noshow("waiting patient added", "new_patient",
             [](BackupPlan& p) { p.reassignment[F::F] = P{3, 0}; }),
      noshow("later patient brought forward", "anticipation",
             [](BackupPlan& p) { p.reassignment[F::E] = P{1, 0}; }),
      noshow("later day over capacity", "capacity",
             [](BackupPlan& p) { p.reassignment[F::A] = P{2, 1}; }),
  };
}

// Validator verdict on the fixture after one mutation.
inline ValidationReport Check(const Fixture& fixture, const Mutation& m) {
  NominalSchedule nominal = fixture.nominal;
  BackupPlan plan = m.kind == PlanKind::kNoShow ? fixture.noshow
                                                : fixture.emergency;
  m.apply(fixture, nominal, plan);
  switch (m.kind) {
    case PlanKind::kNominal:
      return ValidateNominal(fixture.instance, nominal);
    case PlanKind::kEmergency:
      return ValidateEmergencyBackup(fixture.instance, nominal, plan);
    case PlanKind::kNoShow:
      return ValidateNoShowBackup(fixture.instance, nominal, plan);
  }
  return {};
}

}  // namespace orsched::test
