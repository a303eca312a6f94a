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

#include "orsched/pipeline/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>

#include "orsched/core/io.hpp"
#include "orsched/core/penalties.hpp"
#include "orsched/pipeline/completion.hpp"
#include "orsched/validate/validator.hpp"

namespace orsched {
namespace {

constexpr double kObjectiveTolerance = 1e-6;

bool Usable(SolveStatus status) {
  return status == SolveStatus::kOptimal ||
         status == SolveStatus::kFeasibleTimeLimit ||
         status == SolveStatus::kTimeLimitNoSolution;
}

}  // namespace

std::string FormatStepLine(const StepReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%-6s %-22s objective=%.6f bound=%.6f gap=%.3g time=%.2fs",
                r.step.c_str(), ToString(r.status), r.objective, r.best_bound,
                r.gap, r.wall_time);
  return buf;
}

std::string MakeRunId(const Instance& instance, const PipelineConfig& config) {
  std::string text = Dump(InstanceToJson(instance));
  text += ToString(config.variant);
  text += '|' + std::to_string(config.seed);
  text += '|' + std::to_string(config.epsilon);
  text += '|' + (config.mu_weight ? ToString(*config.mu_weight) : "default");
  text += '|' + std::to_string(config.time_limit_per_step);
  text += '|' + std::to_string(config.gap_tolerance);
  // FNV-1a, 64 bit.
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "run-%012llx",
                static_cast<unsigned long long>(hash & 0xffffffffffffull));
  return buf;
}

Pipeline::Pipeline(const Instance& instance, PipelineConfig config,
                   SolverBackend& backend, StepLog log)
    : instance_(instance), backend_(backend), log_(std::move(log)),
      started_(std::chrono::steady_clock::now()) {
  instance.Validate();
  if (!(config.time_limit_per_step > 0)) {
    throw std::invalid_argument("time_limit_per_step must be positive");
  }
  if (config.total_time_limit && !(*config.total_time_limit > 0)) {
    throw std::invalid_argument("total_time_limit must be positive");
  }
  if (config.mu_weight && *config.mu_weight < Rational(0)) {
    throw std::invalid_argument("mu_weight must not be negative");
  }
  if (config.epsilon < 1) {
    throw std::invalid_argument("epsilon must be at least one slot");
  }
  model_options_.epsilon = config.epsilon;
  model_options_.mu_weight = config.mu_weight;
  run_.run_id = MakeRunId(instance, config);
  run_.instance = instance;
  run_.config = std::move(config);
}

ScheduleModel Pipeline::NewModel() const {
  return ScheduleModel(instance_, model_options_);
}

double Pipeline::StepTimeLimit() const {
  double limit = run_.config.time_limit_per_step;
  if (run_.config.total_time_limit) {
    const double elapsed = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - started_)
                               .count();
    limit = std::min(limit, std::max(*run_.config.total_time_limit - elapsed,
                                     1e-3));
  }
  return limit;
}

void Pipeline::Fail(const std::string& message) const {
  throw PipelineError(message, run_);
}

Pipeline::StepOutcome Pipeline::Solve(const std::string& step,
                                      const ScheduleModel& model,
                                      ObjectiveKind kind,
                                      const FullSolution& hint) {
  SolveOptions options;
  options.time_limit = StepTimeLimit();
  options.relative_gap = run_.config.gap_tolerance;
  options.seed = run_.config.seed;
  options.hint = model.Encode(hint);
  const auto broken = model.model().Violations(*options.hint, 1e-6);
  if (!broken.empty()) {
    run_.warnings.push_back(
        step + ": hint breaks " + std::to_string(broken.size()) +
        " rows, first in family " +
        (broken.front().row >= 0
             ? model.model().row_tag(broken.front().row).family
             : std::string("column bounds")));
  }

  StepOutcome out;
  const double floor = model.model().ObjectiveFloor();
  const double hint_value = model.model().ObjectiveValue(*options.hint);
  if (broken.empty() && hint_value <= floor + kObjectiveTolerance) {
    // The hint attains the bound implied by the column bounds alone.
    out.result.status = SolveStatus::kOptimal;
    out.result.objective = hint_value;
    out.result.best_bound = floor;
    out.result.values = *options.hint;
  } else {
    out.result = backend_.Solve(model.model(), options);
  }
  StepReport report;
  report.step = step;
  report.status = out.result.status;
  report.best_bound = out.result.best_bound;
  report.gap = out.result.gap;
  report.wall_time = out.result.wall_time;
  if (!Usable(out.result.status)) {
    run_.step_reports.push_back(report);
    if (log_) log_(report);
    Fail(step + " ended " + ToString(out.result.status) + ": " +
         out.result.message);
  }
  if (out.result.has_solution()) {
    out.solution = model.Decode(out.result.values);
    const Rational exact = model.ExactObjective(kind, out.solution);
    report.objective = out.result.objective;
    report.exact_objective = exact;
    const double diff = std::abs(ToDouble(exact) - out.result.objective);
    if (diff > kObjectiveTolerance * std::max(1.0, std::abs(ToDouble(exact)))) {
      run_.warnings.push_back(step + ": backend objective " +
                              std::to_string(out.result.objective) +
                              " differs from exact value " + ToString(exact));
    }
  } else {
    if (!broken.empty()) {
      run_.step_reports.push_back(report);
      if (log_) log_(report);
      Fail(step + " found no incumbent and its hint is infeasible");
    }
    out.solution = hint;
    const Rational exact = model.ExactObjective(kind, hint);
    report.objective = ToDouble(exact);
    report.exact_objective = exact;
    run_.warnings.push_back(step + ": no incumbent within the time limit, "
                                   "kept the hint");
  }
  run_.step_reports.push_back(report);
  if (log_) log_(report);
  return out;
}

const Assignment& Pipeline::Step1() {
  ScheduleModel model = NewModel();
  model.AddBlockA();
  model.SetObjective(ObjectiveKind::kNominal);
  FullSolution empty;
  empty.nominal.assign(instance_.num_patients(), std::nullopt);
  StepOutcome out = Solve("step1", model, ObjectiveKind::kNominal, empty);
  x_star_ = out.solution.nominal;
  run_.nominal_objective = *run_.step_reports.back().exact_objective;
  incumbent_ = std::move(out.solution);
  return x_star_;
}

const Assignment& Pipeline::RunWarmStart() {
  if (x_star_.empty()) Step1();
  ScheduleModel model = NewModel();
  model.AddCompleteModel();
  model.SetObjective(ObjectiveKind::kNominal);
  Completion hint = CompleteSchedule(model, x_star_);
  if (!hint.unscheduled.empty()) {
    run_.warnings.push_back(
        "step3: warm start took " + std::to_string(hint.unscheduled.size()) +
        " robust-day patients out of the nominal schedule");
  }
  StepOutcome out =
      Solve("step3", model, ObjectiveKind::kNominal, hint.solution);
  x_star_ = out.solution.nominal;
  run_.complete_objective = *run_.step_reports.back().exact_objective;
  run_.complete_bound = out.result.best_bound;
  incumbent_ = std::move(out.solution);
  robust_done_ = true;
  return x_star_;
}

const Assignment& Pipeline::RunHeuristic() {
  if (x_star_.empty()) Step1();
  {
    ScheduleModel model = NewModel();
    model.AddCompleteModel();
    model.AddDifferenceBlock(x_star_);
    model.SetObjective(ObjectiveKind::kDifference);
    Completion hint = CompleteSchedule(model, x_star_);
    StepOutcome out =
        Solve("step5", model, ObjectiveKind::kDifference, hint.solution);
    x_star_ = out.solution.nominal;
    incumbent_ = std::move(out.solution);
  }
  ScheduleModel model = NewModel();
  model.AddCompleteModel();
  model.AddFixAdmissions(x_star_);
  model.SetObjective(ObjectiveKind::kNominal);
  StepOutcome out = Solve("step6", model, ObjectiveKind::kNominal, incumbent_);
  x_star_ = out.solution.nominal;
  run_.complete_objective = *run_.step_reports.back().exact_objective;
  run_.complete_bound = out.result.best_bound;
  incumbent_ = std::move(out.solution);
  robust_done_ = true;
  return x_star_;
}

void Pipeline::Step7() {
  if (!robust_done_) {
    if (run_.config.variant == PipelineVariant::kWarmStart) {
      RunWarmStart();
    } else {
      RunHeuristic();
    }
  }
  ScheduleModel model = NewModel();
  model.AddCompleteModel();
  model.AddFixAdmissions(x_star_);
  model.SetObjective(ObjectiveKind::kEmergency);
  StepOutcome out = Solve("step7", model, ObjectiveKind::kEmergency, incumbent_);
  incumbent_ = std::move(out.solution);
  x_star_ = incumbent_.nominal;

  const PenaltyTable pen = ComputePenalties(instance_);
  run_.plan = MakeNominalSchedule(instance_, x_star_, incumbent_.orders);
  run_.plan.objective_value = NominalObjective(instance_, pen, x_star_);

  const int W = instance_.num_robust_days();
  const int L = instance_.num_lengths();
  run_.emergency_backups.clear();
  for (int h = 0; h < instance_.slots_per_day; ++h) {
    for (int w = 0; w < W; ++w) {
      const int g = instance_.robust_days[w];
      for (int l = 0; l < L; ++l) {
        BackupPlan plan;
        plan.key = EmergencyKey{h, g, l};
        plan.emergency_room = incumbent_.emergency_room[h * W + w];
        plan.reassignment = incumbent_.emergency_plans[(h * W + w) * L + l];
        plan.dropped = MinimalDropped(instance_, x_star_, plan.reassignment);
        plan.objective_value =
            EmergencyScenarioCost(instance_, pen, g, plan.reassignment);
        run_.emergency_backups.push_back(std::move(plan));
      }
    }
  }
  std::sort(run_.emergency_backups.begin(), run_.emergency_backups.end(),
            [](const BackupPlan& a, const BackupPlan& b) {
              return a.emergency() < b.emergency();
            });
}

void Pipeline::Step9() {
  if (run_.emergency_backups.empty()) Step7();
  ScheduleModel model = NewModel();
  model.AddCompleteModel();
  model.AddFixOrder(incumbent_.orders);
  model.AddFreeze(x_star_);
  model.SetObjective(ObjectiveKind::kNoShow);
  StepOutcome out = Solve("step9", model, ObjectiveKind::kNoShow, incumbent_);
  const FullSolution& sol = out.solution;

  const PenaltyTable pen = ComputePenalties(instance_);
  const int W = instance_.num_robust_days();
  const int J = instance_.rooms;
  run_.noshow_backups.clear();
  for (int w = 0; w < W; ++w) {
    const int g = instance_.robust_days[w];
    for (int b = 0; b < instance_.num_patients(); ++b) {
      if (!x_star_[b] || x_star_[b]->day != g) continue;
      BackupPlan plan;
      plan.key = NoShowKey{b, g};
      plan.reassignment = sol.noshow_plans[static_cast<std::size_t>(b) * W + w];
      plan.substitute = sol.substitutes[static_cast<std::size_t>(w) * J +
                                        x_star_[b]->room];
      plan.objective_value =
          NoShowScenarioCost(instance_, pen, plan.reassignment);
      run_.noshow_backups.push_back(std::move(plan));
    }
  }
  std::sort(run_.noshow_backups.begin(), run_.noshow_backups.end(),
            [](const BackupPlan& a, const BackupPlan& b) {
              return a.noshow() < b.noshow();
            });
}

PipelineRun Pipeline::Finish() {
  run_.validation = ValidateRun(run_);
  return run_;
}

PipelineRun Pipeline::Run() {
  Step1();
  if (run_.config.variant == PipelineVariant::kWarmStart) {
    RunWarmStart();
  } else {
    RunHeuristic();
  }
  Step7();
  Step9();
  return Finish();
}

PipelineRun RunPipeline(const Instance& instance, const PipelineConfig& config,
                        SolverBackend& backend, StepLog log) {
  return Pipeline(instance, config, backend, std::move(log)).Run();
}

}  // namespace orsched
