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

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orsched/core/schedule.hpp"
#include "orsched/mip/linear_model.hpp"

namespace orsched {

struct BackendCapabilities {
  bool binary_variables = true;
  bool continuous_variables = true;
  bool linear_constraints = true;
  bool warm_start = false;
  bool time_limit = false;
  bool gap_query = false;
  bool bound_query = false;
  // Whether two solves may run at the same time in one process.
  bool concurrent_solves = false;
};

struct SolveOptions {
  double time_limit = 900.0;
  double relative_gap = 0.0;
  double absolute_gap = 1e-6;
  std::uint64_t seed = 0;
  bool verbose = false;
  // The solve is stopped hard at time_limit + deadline_grace seconds, keeping
  // the best incumbent found so far.
  double deadline_grace = 15.0;
  // Full column vector; the backend may ignore it.
  std::optional<std::vector<double>> hint;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kError;
  double objective = 0;
  double best_bound = 0;
  double gap = 0;
  double wall_time = 0;
  std::vector<double> values;  // empty when there is no incumbent
  std::string message;

  bool has_solution() const { return !values.empty(); }
};

class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual std::string name() const = 0;
  virtual BackendCapabilities capabilities() const = 0;
  // Counts every call in the process, see SolverCallCount().
  SolveResult Solve(const LinearModel& model, const SolveOptions& options);

 protected:
  virtual SolveResult DoSolve(const LinearModel& model,
                              const SolveOptions& options) = 0;
};

// Number of SolverBackend::Solve calls made by this process.
std::uint64_t SolverCallCount();

std::unique_ptr<SolverBackend> MakeHighsBackend();

}  // namespace orsched
