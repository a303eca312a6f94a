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
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "orsched/core/gantt.hpp"
#include "orsched/core/instance.hpp"
#include "orsched/core/schedule.hpp"
#include "orsched/core/validation_report.hpp"

namespace orsched {

inline constexpr int kSchemaVersion = 1;

// Schema violation in an instance or run document. what() starts with the
// JSON path of the offending field.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

using Json = nlohmann::json;

// Documents use 1-based days, rooms and length classes; emergency slots h
// are 0-based as in the slot grid. Rationals are strings ("n" or "n/d").
Json InstanceToJson(const Instance& instance);
// Throws ParseError on schema violations and InvalidInstance on broken
// invariants.
Instance InstanceFromJson(const Json& doc);

Json NominalToJson(const Instance& instance, const NominalSchedule& plan);
NominalSchedule NominalFromJson(const Instance& instance, const Json& doc,
                                const std::string& path = "$");

Json BackupToJson(const Instance& instance, const BackupPlan& plan);
BackupPlan BackupFromJson(const Instance& instance, const Json& doc,
                          const std::string& path = "$");

Json ReportToJson(const ValidationReport& report);
ValidationReport ReportFromJson(const Json& doc, const std::string& path = "$");

Json GanttToJson(const std::vector<GanttEntry>& entries);

// Wall times are left out when run.config.deterministic is set.
Json RunToJson(const PipelineRun& run);
PipelineRun RunFromJson(const Json& doc);

// Canonical text: two-space indent, trailing newline.
std::string Dump(const Json& doc);

Json ReadJsonFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, const std::string& text);

Instance LoadInstance(const std::filesystem::path& path);
void SaveInstance(const std::filesystem::path& path, const Instance& instance);
PipelineRun LoadRun(const std::filesystem::path& path);
void SaveRun(const std::filesystem::path& path, const PipelineRun& run);

}  // namespace orsched
