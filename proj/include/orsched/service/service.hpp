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

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "orsched/core/io.hpp"
#include "orsched/core/schedule.hpp"

namespace orsched {

struct HttpResponse {
  int status = 200;
  Json body;
};

struct DeploymentEvent {
  std::string timestamp;  // UTC, ISO 8601
  std::string run_id;
  Json scenario_key;      // {"kind": "emergency", "h", "g", "l"} or
                          // {"kind": "noshow", "patient", "g"}
  std::string plan_id;
  std::string note;
  int day = 0;            // 1-based day the plan applies to
};

Json EventToJson(const DeploymentEvent& event);
DeploymentEvent EventFromJson(const Json& doc);

// Append-only JSON-lines file of deployment events for one run.
class EventLog {
 public:
  explicit EventLog(std::filesystem::path path) : path_(std::move(path)) {}
  std::vector<DeploymentEvent> ReadAll() const;
  void Append(const DeploymentEvent& event) const;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Request handling without the HTTP layer. Lookups read stored plans only.
class ServiceCore {
 public:
  using Clock = std::function<std::string()>;

  // Throws std::invalid_argument on duplicate run ids. Events already in
  // `event_dir` are replayed.
  ServiceCore(std::vector<PipelineRun> runs, std::filesystem::path event_dir,
              Clock clock = {});

  // Every run document (kind "run") in `run_dir`, in file name order.
  static std::vector<PipelineRun> LoadRunDirectory(
      const std::filesystem::path& run_dir);

  HttpResponse ListRuns() const;
  HttpResponse Nominal(const std::string& run_id) const;
  HttpResponse Backup(const std::string& run_id,
                      const std::map<std::string, std::string>& query) const;
  HttpResponse Deploy(const std::string& run_id, const Json& body);
  HttpResponse Events(const std::string& run_id) const;

 private:
  struct RunState {
    PipelineRun run;
    std::unique_ptr<EventLog> log;
    std::map<int, DeploymentEvent> active;  // by 1-based day
    std::unique_ptr<std::mutex> deploy_mutex;
  };
  struct Lookup {
    const BackupPlan* plan = nullptr;
    Json key;
    std::string plan_id;
    int day = 0;
    std::optional<HttpResponse> error;
  };

  const RunState* Find(const std::string& run_id) const;
  HttpResponse UnknownRun(const std::string& run_id) const;
  Lookup Resolve(const RunState& state,
                 const std::map<std::string, std::string>& query) const;
  Json ValidRanges(const PipelineRun& run) const;

  std::map<std::string, RunState> runs_;
  Clock clock_;
};

// HTTP binding of a ServiceCore:
//   GET  /runs
//   GET  /run/{id}/nominal
//   GET  /run/{id}/backup?kind=emergency&h=&l=[&g=]
//   GET  /run/{id}/backup?kind=noshow&patient=[&g=]
//   POST /run/{id}/deploy
//   GET  /run/{id}/events
class HttpService {
 public:
  explicit HttpService(ServiceCore& core);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Returns the bound port, or -1.
  int BindToAnyPort(const std::string& host);
  bool Bind(const std::string& host, int port);
  // Blocks until Stop().
  bool ListenAfterBind();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace orsched
