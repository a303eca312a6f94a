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

#include "orsched/service/service.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <httplib.h>

#include "orsched/core/gantt.hpp"

namespace orsched {
namespace {

std::string UtcNow() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<int> ParseInt(const std::string& text) {
  int value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return value;
}

HttpResponse Error(int status, const std::string& message, Json extra = {}) {
  Json body{{"error", message}};
  if (!extra.is_null()) body.update(extra);
  return {status, std::move(body)};
}

}  // namespace

Json EventToJson(const DeploymentEvent& e) {
  return {{"timestamp", e.timestamp}, {"run_id", e.run_id},
          {"scenario_key", e.scenario_key}, {"plan_id", e.plan_id},
          {"note", e.note}, {"day", e.day}};
}

DeploymentEvent EventFromJson(const Json& doc) {
  try {
    DeploymentEvent e;
    e.timestamp = doc.at("timestamp").get<std::string>();
    e.run_id = doc.at("run_id").get<std::string>();
    e.scenario_key = doc.at("scenario_key");
    e.plan_id = doc.at("plan_id").get<std::string>();
    e.note = doc.value("note", "");
    e.day = doc.at("day").get<int>();
    return e;
  } catch (const Json::exception& ex) {
    throw ParseError("$", std::string("bad deployment event: ") + ex.what());
  }
}

std::vector<DeploymentEvent> EventLog::ReadAll() const {
  std::vector<DeploymentEvent> out;
  std::ifstream in(path_);
  if (!in) return out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      out.push_back(EventFromJson(Json::parse(line)));
    } catch (const std::exception& ex) {
      throw ParseError(path_.string() + ":" + std::to_string(number),
                       ex.what());
    }
  }
  return out;
}

void EventLog::Append(const DeploymentEvent& event) const {
  if (path_.has_parent_path()) {
    std::filesystem::create_directories(path_.parent_path());
  }
  std::ofstream out(path_, std::ios::app);
  out << EventToJson(event).dump() << '\n';
  out.flush();
  if (!out) throw std::runtime_error("cannot append to " + path_.string());
}

ServiceCore::ServiceCore(std::vector<PipelineRun> runs,
                         std::filesystem::path event_dir, Clock clock)
    : clock_(clock ? std::move(clock) : Clock(UtcNow)) {
  for (PipelineRun& run : runs) {
    const std::string id = run.run_id;
    if (runs_.count(id)) throw std::invalid_argument("duplicate run id " + id);
    RunState state;
    state.log = std::make_unique<EventLog>(event_dir / (id + ".events.jsonl"));
    state.deploy_mutex = std::make_unique<std::mutex>();
    state.run = std::move(run);
    for (DeploymentEvent& e : state.log->ReadAll()) {
      state.active.emplace(e.day, std::move(e));
    }
    runs_.emplace(id, std::move(state));
  }
}

std::vector<PipelineRun> ServiceCore::LoadRunDirectory(
    const std::filesystem::path& run_dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(run_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<PipelineRun> runs;
  for (const auto& path : files) {
    const Json doc = ReadJsonFile(path);
    if (doc.is_object() && doc.value("kind", "") == "run") {
      runs.push_back(RunFromJson(doc));
    }
  }
  return runs;
}

const ServiceCore::RunState* ServiceCore::Find(const std::string& id) const {
  auto it = runs_.find(id);
  return it == runs_.end() ? nullptr : &it->second;
}

HttpResponse ServiceCore::UnknownRun(const std::string& id) const {
  Json ids = Json::array();
  for (const auto& [run_id, state] : runs_) ids.push_back(run_id);
  return Error(404, "unknown run " + id, {{"runs", ids}});
}

Json ServiceCore::ValidRanges(const PipelineRun& run) const {
  const Instance& instance = run.instance;
  Json days = Json::array();
  for (int g : instance.robust_days) days.push_back(g + 1);
  Json patients = Json::array();
  for (const BackupPlan& plan : run.noshow_backups) {
    patients.push_back(instance.patients[plan.noshow().patient].id);
  }
  return {{"kind", {"emergency", "noshow"}},
          {"h", {{"min", 0}, {"max", instance.slots_per_day - 1}}},
          {"l", {{"min", 1}, {"max", instance.num_lengths()}}},
          {"g", days},
          {"patient", patients}};
}

ServiceCore::Lookup ServiceCore::Resolve(
    const RunState& state,
    const std::map<std::string, std::string>& query) const {
  const PipelineRun& run = state.run;
  const Instance& instance = run.instance;
  Lookup out;
  auto get = [&](const std::string& name) -> std::optional<std::string> {
    auto it = query.find(name);
    if (it == query.end()) return std::nullopt;
    return it->second;
  };
  auto fail = [&](int status, const std::string& message) {
    out.error = Error(status, message, {{"valid", ValidRanges(run)}});
    return out;
  };
  const auto kind = get("kind");
  if (!kind) return fail(400, "missing kind");

  std::optional<int> g;
  if (const auto text = get("g")) {
    g = ParseInt(*text);
    if (!g) return fail(400, "g must be an integer");
  }
  if (*kind == "emergency") {
    const auto h_text = get("h");
    const auto l_text = get("l");
    if (!h_text || !l_text) return fail(400, "emergency lookups need h and l");
    const auto h = ParseInt(*h_text);
    const auto l = ParseInt(*l_text);
    if (!h || !l) return fail(400, "h and l must be integers");
    const int day = g ? *g : instance.robust_days.front() + 1;
    out.plan = run.FindEmergency(EmergencyKey{*h, day - 1, *l - 1});
    if (!out.plan) {
      return fail(404, "no emergency back-up for h=" + *h_text + ", l=" +
                           *l_text + ", g=" + std::to_string(day));
    }
    out.key = {{"kind", "emergency"}, {"h", *h}, {"g", day}, {"l", *l}};
    out.plan_id = "emergency:h" + std::to_string(*h) + ":g" +
                  std::to_string(day) + ":l" + std::to_string(*l);
    out.day = day;
    return out;
  }
  if (*kind == "noshow") {
    const auto patient = get("patient");
    if (!patient) return fail(400, "no-show lookups need patient");
    const auto index = instance.PatientIndex(*patient);
    if (!index) return fail(404, "unknown patient " + *patient);
    int day = instance.robust_days.front() + 1;
    const auto& placed = run.plan.assignment[*index];
    if (g) {
      day = *g;
    } else if (placed && instance.RobustIndex(placed->day)) {
      day = placed->day + 1;
    }
    out.plan = run.FindNoShow(NoShowKey{*index, day - 1});
    if (!out.plan) {
      return fail(404, "no no-show back-up for patient " + *patient +
                           " on day " + std::to_string(day));
    }
    out.key = {{"kind", "noshow"}, {"patient", *patient}, {"g", day}};
    out.plan_id = "noshow:" + *patient + ":g" + std::to_string(day);
    out.day = day;
    return out;
  }
  return fail(404, "unknown scenario kind " + *kind);
}

HttpResponse ServiceCore::ListRuns() const {
  Json runs = Json::array();
  for (const auto& [id, state] : runs_) {
    const PipelineRun& run = state.run;
    Json days = Json::array();
    for (int g : run.instance.robust_days) days.push_back(g + 1);
    runs.push_back(
        {{"run_id", id},
         {"instance", run.instance.name},
         {"variant", ToString(run.config.variant)},
         {"days", run.instance.horizon_days},
         {"rooms", run.instance.rooms},
         {"slots_per_day", run.instance.slots_per_day},
         {"robust_days", days},
         {"emergency_backups", run.emergency_backups.size()},
         {"noshow_backups", run.noshow_backups.size()},
         {"valid", run.validation ? Json(run.validation->ok()) : Json(nullptr)}});
  }
  return {200, {{"runs", runs}}};
}

HttpResponse ServiceCore::Nominal(const std::string& run_id) const {
  const RunState* state = Find(run_id);
  if (!state) return UnknownRun(run_id);
  const PipelineRun& run = state->run;
  return {200,
          {{"run_id", run_id},
           {"plan", NominalToJson(run.instance, run.plan)},
           {"gantt", GanttToJson(NominalGantt(run.instance, run.plan))}}};
}

HttpResponse ServiceCore::Backup(
    const std::string& run_id,
    const std::map<std::string, std::string>& query) const {
  const RunState* state = Find(run_id);
  if (!state) return UnknownRun(run_id);
  Lookup found = Resolve(*state, query);
  if (found.error) return *found.error;
  const PipelineRun& run = state->run;
  return {200,
          {{"run_id", run_id},
           {"key", found.key},
           {"plan_id", found.plan_id},
           {"plan", BackupToJson(run.instance, *found.plan)},
           {"gantt", GanttToJson(BackupGantt(run.instance, run.plan,
                                             *found.plan))}}};
}

HttpResponse ServiceCore::Deploy(const std::string& run_id, const Json& body) {
  auto it = runs_.find(run_id);
  if (it == runs_.end()) return UnknownRun(run_id);
  RunState& state = it->second;
  if (!body.is_object()) return Error(400, "deploy body must be an object");
  std::map<std::string, std::string> query;
  for (const auto& [name, value] : body.items()) {
    if (value.is_string()) {
      query[name] = value.get<std::string>();
    } else if (value.is_number_integer()) {
      query[name] = std::to_string(value.get<long long>());
    }
  }
  std::lock_guard<std::mutex> lock(*state.deploy_mutex);
  Lookup found = Resolve(state, query);
  if (found.error) return *found.error;
  const PipelineRun& run = state.run;
  Json payload{{"plan", BackupToJson(run.instance, *found.plan)},
               {"gantt", GanttToJson(BackupGantt(run.instance, run.plan,
                                                 *found.plan))}};
  auto active = state.active.find(found.day);
  if (active != state.active.end()) {
    if (active->second.plan_id != found.plan_id) {
      return Error(409,
                   "day " + std::to_string(found.day) + " already runs " +
                       active->second.plan_id,
                   {{"active", EventToJson(active->second)}});
    }
    payload["created"] = false;
    payload["event"] = EventToJson(active->second);
    return {200, std::move(payload)};
  }
  DeploymentEvent event;
  event.timestamp = clock_();
  event.run_id = run_id;
  event.scenario_key = found.key;
  event.plan_id = found.plan_id;
  event.note = body.value("note", "");
  event.day = found.day;
  state.log->Append(event);
  payload["created"] = true;
  payload["event"] = EventToJson(event);
  state.active.emplace(found.day, std::move(event));
  return {201, std::move(payload)};
}

HttpResponse ServiceCore::Events(const std::string& run_id) const {
  const RunState* state = Find(run_id);
  if (!state) return UnknownRun(run_id);
  Json events = Json::array();
  for (const DeploymentEvent& e : state->log->ReadAll()) {
    events.push_back(EventToJson(e));
  }
  Json active = Json::object();
  for (const auto& [day, e] : state->active) {
    active[std::to_string(day)] = e.plan_id;
  }
  return {200, {{"run_id", run_id}, {"events", events}, {"active", active}}};
}

struct HttpService::Impl {
  explicit Impl(ServiceCore& c) : core(c) {}
  ServiceCore& core;
  httplib::Server server;
};

namespace {

void Send(httplib::Response& res, const HttpResponse& out) {
  res.status = out.status;
  res.set_content(Dump(out.body), "application/json");
}

}  // namespace

HttpService::HttpService(ServiceCore& core)
    : impl_(std::make_unique<Impl>(core)) {
  httplib::Server& s = impl_->server;
  ServiceCore& c = impl_->core;
  s.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  s.Get("/runs", [&c](const httplib::Request&, httplib::Response& res) {
    Send(res, c.ListRuns());
  });
  s.Get(R"(/run/([^/]+)/nominal)",
        [&c](const httplib::Request& req, httplib::Response& res) {
          Send(res, c.Nominal(req.matches[1]));
        });
  s.Get(R"(/run/([^/]+)/backup)",
        [&c](const httplib::Request& req, httplib::Response& res) {
          std::map<std::string, std::string> query;
          for (const auto& [name, value] : req.params) query.emplace(name, value);
          Send(res, c.Backup(req.matches[1], query));
        });
  s.Post(R"(/run/([^/]+)/deploy)",
         [&c](const httplib::Request& req, httplib::Response& res) {
           Json body = Json::parse(req.body, nullptr, false);
           if (body.is_discarded()) {
             Send(res, Error(400, "deploy body is not JSON"));
             return;
           }
           Send(res, c.Deploy(req.matches[1], body));
         });
  s.Get(R"(/run/([^/]+)/events)",
        [&c](const httplib::Request& req, httplib::Response& res) {
          Send(res, c.Events(req.matches[1]));
        });
  s.set_exception_handler([](const httplib::Request&, httplib::Response& res,
                             std::exception_ptr ep) {
    std::string message = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& ex) {
      message = ex.what();
    } catch (...) {
    }
    Send(res, Error(500, message));
  });
}

HttpService::~HttpService() = default;

int HttpService::BindToAnyPort(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool HttpService::Bind(const std::string& host, int port) {
  return impl_->server.bind_to_port(host, port);
}

bool HttpService::ListenAfterBind() { return impl_->server.listen_after_bind(); }

void HttpService::Stop() { impl_->server.stop(); }

}  // namespace orsched
