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

#include <chrono>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "orsched/core/instance.hpp"
#include "orsched/core/schedule.hpp"
#include "orsched/mip/schedule_model.hpp"
#include "orsched/mip/solver_backend.hpp"

namespace orsched {

// Hard failure of a step. partial() holds the steps completed so far.
class PipelineError : public std::runtime_error {
 public:
  PipelineError(const std::string& message, PipelineRun partial)
      : std::runtime_error(message), partial_(std::move(partial)) {}
  const PipelineRun& partial() const { return partial_; }

 private:
  PipelineRun partial_;
};

using StepLog = std::function<void(const StepReport&)>;

// One log line per step: id, status, objective, bound, gap, wall time.
std::string FormatStepLine(const StepReport& report);

// Deterministic identifier derived from the instance and the config.
std::string MakeRunId(const Instance& instance, const PipelineConfig& config);

// Runs the solution steps in order. Each step solves one model with a hint
// built from the previous incumbent; a step that ends without an incumbent
// falls back to its hint and records a warning.
class Pipeline {
 public:
  Pipeline(const Instance& instance, PipelineConfig config,
           SolverBackend& backend, StepLog log = {});

  // Step 1: nominal schedule. Returns x*.
  const Assignment& Step1();
  // Steps 3 and 4: complete model with the nominal objective, hinted by a
  // completed x*; then admissions of robust days fixed for later steps.
  const Assignment& RunWarmStart();
  // Steps 5 and 6: difference objective against x*, then the nominal objective
  // with the admissions of robust days held.
  const Assignment& RunHeuristic();
  // Step 7: emergency objective; fixes the nominal plan, ordering and the
  // emergency back-ups.
  void Step7();
  // Steps 8 and 9: order and plan frozen, no-show objective; fixes the
  // no-show back-ups.
  void Step9();
  // Attaches the validator verdict and returns the run.
  PipelineRun Finish();

  // Every step for the configured variant.
  PipelineRun Run();

  const PipelineRun& partial() const { return run_; }

 private:
  struct StepOutcome {
    FullSolution solution;
    SolveResult result;
  };

  StepOutcome Solve(const std::string& step, const ScheduleModel& model,
                    ObjectiveKind kind, const FullSolution& hint);
  ScheduleModel NewModel() const;
  double StepTimeLimit() const;
  [[noreturn]] void Fail(const std::string& message) const;

  const Instance& instance_;
  SolverBackend& backend_;
  StepLog log_;
  PipelineRun run_;
  ModelOptions model_options_;
  std::chrono::steady_clock::time_point started_;

  bool robust_done_ = false;
  Assignment x_star_;
  FullSolution incumbent_;
};

PipelineRun RunPipeline(const Instance& instance, const PipelineConfig& config,
                        SolverBackend& backend, StepLog log = {});

}  // namespace orsched
