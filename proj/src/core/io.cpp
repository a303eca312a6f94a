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

#include "orsched/core/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace orsched {
namespace {

std::string Child(const std::string& path, const std::string& key) {
  return path + "." + key;
}

std::string Child(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

const Json& Field(const Json& doc, const std::string& path,
                  const std::string& key) {
  if (!doc.is_object()) throw ParseError(path, "expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(Child(path, key), "missing field");
  return *it;
}

int AsInt(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ParseError(path, "expected an integer");
  return v.get<int>();
}

double AsDouble(const Json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError(path, "expected a number");
  return v.get<double>();
}

bool AsBool(const Json& v, const std::string& path) {
  if (!v.is_boolean()) throw ParseError(path, "expected a boolean");
  return v.get<bool>();
}

std::string AsString(const Json& v, const std::string& path) {
  if (!v.is_string()) throw ParseError(path, "expected a string");
  return v.get<std::string>();
}

const Json& AsArray(const Json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(path, "expected an array");
  return v;
}

Rational AsRational(const Json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  try {
    return ParseRational(AsString(v, path));
  } catch (const std::invalid_argument& e) {
    throw ParseError(path, e.what());
  }
}

int GetInt(const Json& doc, const std::string& path, const std::string& key) {
  return AsInt(Field(doc, path, key), Child(path, key));
}

// 1-based index in [1, count] -> 0-based.
int GetIndex(const Json& doc, const std::string& path, const std::string& key,
             int count) {
  const int value = GetInt(doc, path, key);
  if (value < 1 || value > count) {
    throw ParseError(Child(path, key), "out of range [1, " +
                                           std::to_string(count) + "]");
  }
  return value - 1;
}

int PatientRef(const Instance& instance, const Json& v,
               const std::string& path) {
  const std::string id = AsString(v, path);
  const auto index = instance.PatientIndex(id);
  if (!index) throw ParseError(path, "unknown patient '" + id + "'");
  return *index;
}

std::vector<int> IntList(const Json& v, const std::string& path) {
  std::vector<int> out;
  const Json& arr = AsArray(v, path);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    out.push_back(AsInt(arr[k], Child(path, k)));
  }
  return out;
}

template <typename T>
Json GridToJson(const DayRoomGrid<T>& grid) {
  Json rows = Json::array();
  for (int d = 0; d < grid.days(); ++d) {
    Json row = Json::array();
    for (int j = 0; j < grid.rooms(); ++j) row.push_back(grid(d, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

DayRoomGrid<int> GridFromJson(const Json& v, const std::string& path, int days,
                              int rooms) {
  const Json& rows = AsArray(v, path);
  if (static_cast<int>(rows.size()) != days) {
    throw ParseError(path, "expected " + std::to_string(days) + " rows");
  }
  DayRoomGrid<int> grid(days, rooms);
  for (int d = 0; d < days; ++d) {
    const std::string row_path = Child(path, d);
    const Json& row = AsArray(rows[d], row_path);
    if (static_cast<int>(row.size()) != rooms) {
      throw ParseError(row_path, "expected " + std::to_string(rooms) +
                                     " entries");
    }
    for (int j = 0; j < rooms; ++j) {
      const std::string cell = Child(row_path, j);
      grid(d, j) = row[j].is_boolean() ? static_cast<int>(row[j].get<bool>())
                                       : AsInt(row[j], cell);
    }
  }
  return grid;
}

Json AssignmentToJson(const Instance& instance, const Assignment& x) {
  Json out = Json::array();
  for (int i = 0; i < instance.num_patients(); ++i) {
    if (!x[i]) continue;
    out.push_back({{"patient", instance.patients[i].id},
                   {"day", x[i]->day + 1},
                   {"room", x[i]->room + 1}});
  }
  return out;
}

Assignment AssignmentFromJson(const Instance& instance, const Json& v,
                              const std::string& path) {
  Assignment x(instance.num_patients());
  const Json& arr = AsArray(v, path);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string item = Child(path, k);
    const int i = PatientRef(instance, Field(arr[k], item, "patient"),
                             Child(item, "patient"));
    if (x[i]) throw ParseError(item, "patient listed twice");
    x[i] = Placement{GetIndex(arr[k], item, "day", instance.horizon_days),
                     GetIndex(arr[k], item, "room", instance.rooms)};
  }
  return x;
}

Json PatientListToJson(const Instance& instance, const std::vector<int>& ids) {
  Json out = Json::array();
  for (int i : ids) out.push_back(instance.patients[i].id);
  return out;
}

std::vector<int> PatientListFromJson(const Instance& instance, const Json& v,
                                     const std::string& path) {
  std::vector<int> out;
  const Json& arr = AsArray(v, path);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    out.push_back(PatientRef(instance, arr[k], Child(path, k)));
  }
  return out;
}

Json OptionalDouble(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

void CheckSchema(const Json& doc, const std::string& kind) {
  const int version = GetInt(doc, "$", "schema_version");
  if (version != kSchemaVersion) {
    throw ParseError("$.schema_version",
                     "unsupported version " + std::to_string(version));
  }
  if (AsString(Field(doc, "$", "kind"), "$.kind") != kind) {
    throw ParseError("$.kind", "expected '" + kind + "'");
  }
}

Json InstanceBody(const Instance& instance) {
  Json patients = Json::array();
  for (const Patient& p : instance.patients) {
    DayRoomGrid<int> compat(p.compatibility.days(), p.compatibility.rooms());
    for (int d = 0; d < compat.days(); ++d) {
      for (int j = 0; j < compat.rooms(); ++j) {
        compat(d, j) = p.Compatible(d, j) ? 1 : 0;
      }
    }
    patients.push_back({{"id", p.id},
                        {"deadline_days", p.deadline_days},
                        {"waited_days", p.waited_days},
                        {"durations", GridToJson(p.durations)},
                        {"compatibility", GridToJson(compat)}});
  }
  Json robust = Json::array();
  for (int g : instance.robust_days) robust.push_back(g + 1);
  return {{"name", instance.name},
          {"horizon_days", instance.horizon_days},
          {"robust_days", robust},
          {"rooms", instance.rooms},
          {"slots_per_day", instance.slots_per_day},
          {"capacity", GridToJson(instance.capacity)},
          {"emergency_lengths", instance.emergency_lengths},
          {"overtime", instance.overtime},
          {"fixed_delay", instance.fixed_delay},
          {"max_delay", instance.max_delay},
          {"noshow_mode", instance.noshow_mode == NoShowMode::kFixedDelay
                              ? "fixed"
                              : "within"},
          {"patients", patients}};
}

Instance InstanceBodyFromJson(const Json& doc, const std::string& path) {
  Instance instance;
  instance.name = AsString(Field(doc, path, "name"), Child(path, "name"));
  instance.horizon_days = GetInt(doc, path, "horizon_days");
  instance.rooms = GetInt(doc, path, "rooms");
  if (instance.horizon_days < 1) {
    throw ParseError(Child(path, "horizon_days"), "must be positive");
  }
  if (instance.rooms < 1) throw ParseError(Child(path, "rooms"), "must be positive");
  instance.slots_per_day = GetInt(doc, path, "slots_per_day");
  instance.robust_days.clear();
  for (int g : IntList(Field(doc, path, "robust_days"),
                       Child(path, "robust_days"))) {
    instance.robust_days.push_back(g - 1);
  }
  instance.capacity = GridFromJson(Field(doc, path, "capacity"),
                                   Child(path, "capacity"),
                                   instance.horizon_days, instance.rooms);
  instance.emergency_lengths = IntList(Field(doc, path, "emergency_lengths"),
                                       Child(path, "emergency_lengths"));
  instance.overtime = GetInt(doc, path, "overtime");
  instance.fixed_delay = GetInt(doc, path, "fixed_delay");
  instance.max_delay = GetInt(doc, path, "max_delay");
  const std::string mode =
      AsString(Field(doc, path, "noshow_mode"), Child(path, "noshow_mode"));
  if (mode == "fixed") {
    instance.noshow_mode = NoShowMode::kFixedDelay;
  } else if (mode == "within") {
    instance.noshow_mode = NoShowMode::kWithinDelay;
  } else {
    throw ParseError(Child(path, "noshow_mode"),
                     "expected 'fixed' or 'within'");
  }
  const std::string ppath = Child(path, "patients");
  const Json& patients = AsArray(Field(doc, path, "patients"), ppath);
  for (std::size_t k = 0; k < patients.size(); ++k) {
    const std::string item = Child(ppath, k);
    Patient p;
    p.id = AsString(Field(patients[k], item, "id"), Child(item, "id"));
    p.deadline_days = GetInt(patients[k], item, "deadline_days");
    p.waited_days = GetInt(patients[k], item, "waited_days");
    p.durations = GridFromJson(Field(patients[k], item, "durations"),
                               Child(item, "durations"), instance.horizon_days,
                               instance.rooms);
    const DayRoomGrid<int> compat = GridFromJson(
        Field(patients[k], item, "compatibility"), Child(item, "compatibility"),
        instance.horizon_days, instance.rooms);
    p.compatibility = DayRoomGrid<char>(instance.horizon_days, instance.rooms);
    for (int d = 0; d < instance.horizon_days; ++d) {
      for (int j = 0; j < instance.rooms; ++j) {
        p.compatibility(d, j) = compat(d, j) != 0 ? 1 : 0;
      }
    }
    instance.patients.push_back(std::move(p));
  }
  instance.Validate();
  return instance;
}

// A missing bound or gap (no incumbent, no finite bound) is written as null.
Json FiniteOrNull(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double AsDoubleOr(const Json& v, const std::string& path, double missing) {
  return v.is_null() ? missing : AsDouble(v, path);
}

Json StepToJson(const StepReport& step, bool deterministic) {
  Json out = {{"step", step.step},
              {"status", ToString(step.status)},
              {"objective", step.objective},
              {"best_bound", FiniteOrNull(step.best_bound)},
              {"gap", FiniteOrNull(step.gap)}};
  if (!deterministic) out["wall_time"] = step.wall_time;
  out["exact_objective"] =
      step.exact_objective ? Json(ToString(*step.exact_objective))
                           : Json(nullptr);
  return out;
}

StepReport StepFromJson(const Json& doc, const std::string& path) {
  StepReport step;
  step.step = AsString(Field(doc, path, "step"), Child(path, "step"));
  try {
    step.status = ParseSolveStatus(
        AsString(Field(doc, path, "status"), Child(path, "status")));
  } catch (const std::invalid_argument& e) {
    throw ParseError(Child(path, "status"), e.what());
  }
  step.objective = AsDouble(Field(doc, path, "objective"),
                            Child(path, "objective"));
  step.best_bound =
      AsDoubleOr(Field(doc, path, "best_bound"), Child(path, "best_bound"),
                 -std::numeric_limits<double>::infinity());
  step.gap = AsDoubleOr(Field(doc, path, "gap"), Child(path, "gap"),
                        std::numeric_limits<double>::infinity());
  if (doc.contains("wall_time")) {
    step.wall_time = AsDouble(doc["wall_time"], Child(path, "wall_time"));
  }
  const Json& exact = Field(doc, path, "exact_objective");
  if (!exact.is_null()) {
    step.exact_objective = AsRational(exact, Child(path, "exact_objective"));
  }
  return step;
}

Json ConfigToJson(const PipelineConfig& config) {
  return {{"variant", ToString(config.variant)},
          {"time_limit_per_step", config.time_limit_per_step},
          {"total_time_limit", OptionalDouble(config.total_time_limit)},
          {"gap_tolerance", config.gap_tolerance},
          {"mu_weight", config.mu_weight ? Json(ToString(*config.mu_weight))
                                         : Json(nullptr)},
          {"epsilon", config.epsilon},
          {"seed", config.seed},
          {"deterministic", config.deterministic}};
}

PipelineConfig ConfigFromJson(const Json& doc, const std::string& path) {
  PipelineConfig config;
  try {
    config.variant = ParsePipelineVariant(
        AsString(Field(doc, path, "variant"), Child(path, "variant")));
  } catch (const std::invalid_argument& e) {
    throw ParseError(Child(path, "variant"), e.what());
  }
  config.time_limit_per_step =
      AsDouble(Field(doc, path, "time_limit_per_step"),
               Child(path, "time_limit_per_step"));
  const Json& total = Field(doc, path, "total_time_limit");
  if (!total.is_null()) {
    config.total_time_limit = AsDouble(total, Child(path, "total_time_limit"));
  }
  config.gap_tolerance = AsDouble(Field(doc, path, "gap_tolerance"),
                                  Child(path, "gap_tolerance"));
  const Json& mu = Field(doc, path, "mu_weight");
  if (!mu.is_null()) config.mu_weight = AsRational(mu, Child(path, "mu_weight"));
  config.epsilon = GetInt(doc, path, "epsilon");
  const Json& seed = Field(doc, path, "seed");
  if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
    throw ParseError(Child(path, "seed"), "expected an integer");
  }
  config.seed = seed.get<std::uint64_t>();
  config.deterministic = AsBool(Field(doc, path, "deterministic"),
                                Child(path, "deterministic"));
  return config;
}

}  // namespace

Json InstanceToJson(const Instance& instance) {
  Json doc = {{"schema_version", kSchemaVersion}, {"kind", "instance"}};
  doc.update(InstanceBody(instance));
  return doc;
}

Instance InstanceFromJson(const Json& doc) {
  CheckSchema(doc, "instance");
  return InstanceBodyFromJson(doc, "$");
}

Json NominalToJson(const Instance& instance, const NominalSchedule& plan) {
  Json ordering = Json::array();
  for (const RoomDayPlan& room : plan.ordering) {
    ordering.push_back({{"day", room.day + 1},
                        {"room", room.room + 1},
                        {"patients", PatientListToJson(instance, room.patients)},
                        {"start_slots", room.start_slots},
                        {"release", room.release}});
  }
  return {{"assignment", AssignmentToJson(instance, plan.assignment)},
          {"ordering", ordering},
          {"objective_value", ToString(plan.objective_value)}};
}

NominalSchedule NominalFromJson(const Instance& instance, const Json& doc,
                                const std::string& path) {
  NominalSchedule plan;
  plan.assignment = AssignmentFromJson(
      instance, Field(doc, path, "assignment"), Child(path, "assignment"));
  const std::string opath = Child(path, "ordering");
  const Json& ordering = AsArray(Field(doc, path, "ordering"), opath);
  for (std::size_t k = 0; k < ordering.size(); ++k) {
    const std::string item = Child(opath, k);
    RoomDayPlan room;
    room.day = GetIndex(ordering[k], item, "day", instance.horizon_days);
    room.room = GetIndex(ordering[k], item, "room", instance.rooms);
    room.patients = PatientListFromJson(
        instance, Field(ordering[k], item, "patients"), Child(item, "patients"));
    room.start_slots = IntList(Field(ordering[k], item, "start_slots"),
                               Child(item, "start_slots"));
    if (room.start_slots.size() != room.patients.size()) {
      throw ParseError(Child(item, "start_slots"),
                       "length differs from patients");
    }
    room.release = GetInt(ordering[k], item, "release");
    plan.ordering.push_back(std::move(room));
  }
  plan.objective_value = AsRational(Field(doc, path, "objective_value"),
                                    Child(path, "objective_value"));
  return plan;
}

Json BackupToJson(const Instance& instance, const BackupPlan& plan) {
  Json out;
  if (plan.IsEmergency()) {
    const EmergencyKey& key = plan.emergency();
    out = {{"kind", "emergency"},
           {"h", key.slot},
           {"g", key.day + 1},
           {"l", key.length + 1},
           {"emergency_room",
            plan.emergency_room ? Json(*plan.emergency_room + 1)
                                : Json(nullptr)},
           {"dropped", PatientListToJson(instance, plan.dropped)}};
  } else {
    const NoShowKey& key = plan.noshow();
    out = {{"kind", "noshow"},
           {"patient", instance.patients[key.patient].id},
           {"g", key.day + 1},
           {"substitute",
            plan.substitute ? Json(instance.patients[*plan.substitute].id)
                            : Json(nullptr)}};
  }
  out["reassignment"] = AssignmentToJson(instance, plan.reassignment);
  out["objective_value"] = ToString(plan.objective_value);
  return out;
}

BackupPlan BackupFromJson(const Instance& instance, const Json& doc,
                          const std::string& path) {
  BackupPlan plan;
  const std::string kind = AsString(Field(doc, path, "kind"),
                                    Child(path, "kind"));
  const int day = GetIndex(doc, path, "g", instance.horizon_days);
  if (kind == "emergency") {
    const int h = GetInt(doc, path, "h");
    if (h < 0 || h >= instance.slots_per_day) {
      throw ParseError(Child(path, "h"), "out of range");
    }
    plan.key = EmergencyKey{h, day,
                            GetIndex(doc, path, "l", instance.num_lengths())};
    const Json& room = Field(doc, path, "emergency_room");
    if (!room.is_null()) {
      plan.emergency_room = GetIndex(doc, path, "emergency_room",
                                     instance.rooms);
    }
    plan.dropped = PatientListFromJson(instance, Field(doc, path, "dropped"),
                                       Child(path, "dropped"));
  } else if (kind == "noshow") {
    plan.key = NoShowKey{PatientRef(instance, Field(doc, path, "patient"),
                                    Child(path, "patient")),
                         day};
    const Json& sub = Field(doc, path, "substitute");
    if (!sub.is_null()) {
      plan.substitute = PatientRef(instance, sub, Child(path, "substitute"));
    }
  } else {
    throw ParseError(Child(path, "kind"), "expected 'emergency' or 'noshow'");
  }
  plan.reassignment = AssignmentFromJson(
      instance, Field(doc, path, "reassignment"), Child(path, "reassignment"));
  plan.objective_value = AsRational(Field(doc, path, "objective_value"),
                                    Child(path, "objective_value"));
  return plan;
}

Json ReportToJson(const ValidationReport& report) {
  Json violations = Json::array();
  for (const Violation& v : report.violations) {
    violations.push_back(
        {{"family", v.family}, {"index", v.index}, {"message", v.message}});
  }
  return {{"ok", report.ok()},
          {"violations", violations},
          {"warnings", report.warnings}};
}

ValidationReport ReportFromJson(const Json& doc, const std::string& path) {
  ValidationReport report;
  const std::string vpath = Child(path, "violations");
  const Json& violations = AsArray(Field(doc, path, "violations"), vpath);
  for (std::size_t k = 0; k < violations.size(); ++k) {
    const std::string item = Child(vpath, k);
    report.Add(
        AsString(Field(violations[k], item, "family"), Child(item, "family")),
        IntList(Field(violations[k], item, "index"), Child(item, "index")),
        AsString(Field(violations[k], item, "message"),
                 Child(item, "message")));
  }
  const std::string wpath = Child(path, "warnings");
  const Json& warnings = AsArray(Field(doc, path, "warnings"), wpath);
  for (std::size_t k = 0; k < warnings.size(); ++k) {
    report.warnings.push_back(AsString(warnings[k], Child(wpath, k)));
  }
  return report;
}

Json GanttToJson(const std::vector<GanttEntry>& entries) {
  Json out = Json::array();
  for (const GanttEntry& e : entries) {
    out.push_back({{"day", e.day},
                   {"room", e.room},
                   {"patient", e.patient.empty() ? Json(nullptr)
                                                 : Json(e.patient)},
                   {"start_slot", e.start_slot},
                   {"end_slot", e.end_slot},
                   {"kind", ToString(e.kind)},
                   {"day_offset", e.day_offset}});
  }
  return out;
}

Json RunToJson(const PipelineRun& run) {
  const Instance& instance = run.instance;
  const bool deterministic = run.config.deterministic;
  Json steps = Json::array();
  for (const StepReport& step : run.step_reports) {
    steps.push_back(StepToJson(step, deterministic));
  }
  Json emergencies = Json::array();
  for (const BackupPlan& plan : run.emergency_backups) {
    emergencies.push_back(BackupToJson(instance, plan));
  }
  Json noshows = Json::array();
  for (const BackupPlan& plan : run.noshow_backups) {
    noshows.push_back(BackupToJson(instance, plan));
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", "run"},
          {"run_id", run.run_id},
          {"instance", InstanceBody(instance)},
          {"config", ConfigToJson(run.config)},
          {"step_reports", steps},
          {"nominal_objective", ToString(run.nominal_objective)},
          {"complete_objective", ToString(run.complete_objective)},
          {"complete_bound", FiniteOrNull(run.complete_bound)},
          {"plan", NominalToJson(instance, run.plan)},
          {"emergency_backups", emergencies},
          {"noshow_backups", noshows},
          {"warnings", run.warnings},
          {"validation", run.validation ? ReportToJson(*run.validation)
                                        : Json(nullptr)}};
}

PipelineRun RunFromJson(const Json& doc) {
  CheckSchema(doc, "run");
  PipelineRun run;
  run.run_id = AsString(Field(doc, "$", "run_id"), "$.run_id");
  run.instance = InstanceBodyFromJson(Field(doc, "$", "instance"), "$.instance");
  const Instance& instance = run.instance;
  run.config = ConfigFromJson(Field(doc, "$", "config"), "$.config");
  const Json& steps = AsArray(Field(doc, "$", "step_reports"),
                              "$.step_reports");
  for (std::size_t k = 0; k < steps.size(); ++k) {
    run.step_reports.push_back(
        StepFromJson(steps[k], Child("$.step_reports", k)));
  }
  run.nominal_objective = AsRational(Field(doc, "$", "nominal_objective"),
                                     "$.nominal_objective");
  run.complete_objective = AsRational(Field(doc, "$", "complete_objective"),
                                      "$.complete_objective");
  run.complete_bound =
      AsDoubleOr(Field(doc, "$", "complete_bound"), "$.complete_bound",
                 -std::numeric_limits<double>::infinity());
  run.plan = NominalFromJson(instance, Field(doc, "$", "plan"), "$.plan");
  const Json& emergencies = AsArray(Field(doc, "$", "emergency_backups"),
                                    "$.emergency_backups");
  for (std::size_t k = 0; k < emergencies.size(); ++k) {
    const std::string item = Child("$.emergency_backups", k);
    BackupPlan plan = BackupFromJson(instance, emergencies[k], item);
    if (!plan.IsEmergency()) throw ParseError(item, "expected an emergency plan");
    run.emergency_backups.push_back(std::move(plan));
  }
  const Json& noshows = AsArray(Field(doc, "$", "noshow_backups"),
                                "$.noshow_backups");
  for (std::size_t k = 0; k < noshows.size(); ++k) {
    const std::string item = Child("$.noshow_backups", k);
    BackupPlan plan = BackupFromJson(instance, noshows[k], item);
    if (plan.IsEmergency()) throw ParseError(item, "expected a no-show plan");
    run.noshow_backups.push_back(std::move(plan));
  }
  auto by_key = [](const BackupPlan& a, const BackupPlan& b) {
    return a.key < b.key;
  };
  std::sort(run.emergency_backups.begin(), run.emergency_backups.end(), by_key);
  std::sort(run.noshow_backups.begin(), run.noshow_backups.end(), by_key);
  const Json& warnings = AsArray(Field(doc, "$", "warnings"), "$.warnings");
  for (std::size_t k = 0; k < warnings.size(); ++k) {
    run.warnings.push_back(AsString(warnings[k], Child("$.warnings", k)));
  }
  const Json& validation = Field(doc, "$", "validation");
  if (!validation.is_null()) {
    run.validation = ReportFromJson(validation, "$.validation");
  }
  return run;
}

std::string Dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("$", std::string("malformed JSON in ") + path.string() +
                              ": " + e.what());
  }
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Instance LoadInstance(const std::filesystem::path& path) {
  return InstanceFromJson(ReadJsonFile(path));
}

void SaveInstance(const std::filesystem::path& path, const Instance& instance) {
  WriteTextFile(path, Dump(InstanceToJson(instance)));
}

PipelineRun LoadRun(const std::filesystem::path& path) {
  return RunFromJson(ReadJsonFile(path));
}

void SaveRun(const std::filesystem::path& path, const PipelineRun& run) {
  WriteTextFile(path, Dump(RunToJson(run)));
}

}  // namespace orsched
