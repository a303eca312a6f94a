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

#include "orsched/mip/solver_backend.hpp"

#include <atomic>

namespace orsched {
namespace {

std::atomic<std::uint64_t> solver_calls{0};

}  // namespace

SolveResult SolverBackend::Solve(const LinearModel& model,
                                 const SolveOptions& options) {
  solver_calls.fetch_add(1, std::memory_order_relaxed);
  return DoSolve(model, options);
}

std::uint64_t SolverCallCount() {
  return solver_calls.load(std::memory_order_relaxed);
}

}  // namespace orsched
