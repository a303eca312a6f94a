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

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <optional>
#include <stdexcept>

#include "Highs.h"
#include "orsched/mip/solver_backend.hpp"

namespace orsched {
namespace {

// Points stdout at /dev/null for its lifetime. HiGHS 1.12 prints from inside
// the MIP solver regardless of output_flag, which would corrupt documents the
// CLI writes to stdout.
class MutedStdout {
 public:
  MutedStdout() {
    std::fflush(stdout);
    saved_ = dup(STDOUT_FILENO);
    const int null = open("/dev/null", O_WRONLY);
    if (saved_ >= 0 && null >= 0) dup2(null, STDOUT_FILENO);
    if (null >= 0) close(null);
  }
  ~MutedStdout() {
    std::fflush(stdout);
    if (saved_ >= 0) {
      dup2(saved_, STDOUT_FILENO);
      close(saved_);
    }
  }
  MutedStdout(const MutedStdout&) = delete;
  MutedStdout& operator=(const MutedStdout&) = delete;

 private:
  int saved_ = -1;
};

// HiGHS checks its time limit only now and then (presolve, probing and
// restarts can overrun it by minutes), so every solve runs in a child process
// that streams improving incumbents back and is killed past the hard
// deadline.

enum RecordKind : std::int32_t { kIncumbent = 1, kFinal = 2 };

struct RecordHeader {
  std::int32_t kind = 0;
  std::int32_t status = 0;
  double objective = 0;
  double bound = 0;
  double gap = 0;
  std::uint64_t count = 0;
};

void WriteAll(int fd, const void* data, std::size_t size) {
  const char* p = static_cast<const char*>(data);
  while (size > 0) {
    const ssize_t n = write(fd, p, size);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) _exit(2);
    p += n;
    size -= static_cast<std::size_t>(n);
  }
}

void WriteRecord(int fd, RecordHeader header, const std::vector<double>& values) {
  header.count = values.size();
  WriteAll(fd, &header, sizeof header);
  if (!values.empty()) {
    WriteAll(fd, values.data(), values.size() * sizeof(double));
  }
}

// Final verdict of a finished run.
SolveResult Collect(Highs& highs, HighsStatus run) {
  SolveResult result;
  const HighsInfo& info = highs.getInfo();
  const bool feasible = info.primal_solution_status == kSolutionStatusFeasible;
  if (feasible) {
    result.values = highs.getSolution().col_value;
    result.objective = info.objective_function_value;
  }
  result.best_bound = info.mip_dual_bound;
  result.gap = feasible ? info.mip_gap : kInf;
  switch (highs.getModelStatus()) {
    case HighsModelStatus::kOptimal:
      result.status = SolveStatus::kOptimal;
      result.gap = 0;
      result.best_bound = result.objective;
      break;
    case HighsModelStatus::kInfeasible:
      result.status = SolveStatus::kInfeasible;
      break;
    case HighsModelStatus::kTimeLimit:
    case HighsModelStatus::kInterrupt:
    case HighsModelStatus::kSolutionLimit:
    case HighsModelStatus::kIterationLimit:
      result.status = feasible ? SolveStatus::kFeasibleTimeLimit
                               : SolveStatus::kTimeLimitNoSolution;
      break;
    default:
      result.status = SolveStatus::kError;
      result.message = highs.modelStatusToString(highs.getModelStatus());
      break;
  }
  if (run == HighsStatus::kError && result.status != SolveStatus::kInfeasible) {
    result.status = SolveStatus::kError;
  }
  if (!std::isfinite(result.gap)) result.gap = kInf;
  return result;
}

[[noreturn]] void RunChild(Highs& highs, const SolveOptions& options, int fd) {
  struct Sink {
    int fd;
  } sink{fd};
  highs.setCallback(
      [](int type, const std::string&, const HighsCallbackOutput* out,
         HighsCallbackInput*, void* data) {
        if (type != kCallbackMipImprovingSolution) return;
        RecordHeader header;
        header.kind = kIncumbent;
        header.objective = out->objective_function_value;
        header.bound = out->mip_dual_bound;
        header.gap = out->mip_gap;
        WriteRecord(static_cast<Sink*>(data)->fd, header, out->mip_solution);
      },
      &sink);
  highs.startCallback(kCallbackMipImprovingSolution);
  HighsStatus run;
  if (options.verbose) {
    run = highs.run();
  } else {
    MutedStdout muted;
    run = highs.run();
  }
  const SolveResult result = Collect(highs, run);
  RecordHeader header;
  header.kind = kFinal;
  header.status = static_cast<std::int32_t>(result.status);
  header.objective = result.objective;
  header.bound = result.best_bound;
  header.gap = result.gap;
  WriteRecord(fd, header, result.values);
  close(fd);
  std::fflush(stdout);
  _exit(0);
}

// Reads records until the child closes the pipe or the deadline passes.
// Returns the final result, or the best streamed incumbent.
SolveResult ReadChild(pid_t child, int fd, double deadline_seconds) {
  const auto deadline =
      std::chrono::steady_clock::now() +
      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
          std::chrono::duration<double>(deadline_seconds));
  std::vector<char> buffer;
  std::optional<SolveResult> final_result;
  SolveResult incumbent;
  incumbent.status = SolveStatus::kTimeLimitNoSolution;
  bool killed = false;
  char chunk[1 << 16];
  while (true) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                          deadline - std::chrono::steady_clock::now())
                          .count();
    if (left <= 0) {
      kill(child, SIGKILL);
      killed = true;
      break;
    }
    pollfd pfd{fd, POLLIN, 0};
    const int ready = poll(&pfd, 1, static_cast<int>(std::min<long long>(
                                        left, 1000)));
    if (ready < 0 && errno == EINTR) continue;
    if (ready <= 0) continue;
    const ssize_t n = read(fd, chunk, sizeof chunk);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    buffer.insert(buffer.end(), chunk, chunk + n);
    // Consume every complete record.
    std::size_t at = 0;
    while (buffer.size() - at >= sizeof(RecordHeader)) {
      RecordHeader header;
      std::memcpy(&header, buffer.data() + at, sizeof header);
      const std::size_t bytes = header.count * sizeof(double);
      if (buffer.size() - at - sizeof header < bytes) break;
      SolveResult r;
      r.objective = header.objective;
      r.best_bound = header.bound;
      r.gap = header.gap;
      r.values.resize(header.count);
      if (bytes > 0) {
        std::memcpy(r.values.data(), buffer.data() + at + sizeof header, bytes);
      }
      at += sizeof header + bytes;
      if (header.kind == kFinal) {
        r.status = static_cast<SolveStatus>(header.status);
        final_result = std::move(r);
      } else {
        r.status = SolveStatus::kFeasibleTimeLimit;
        incumbent = std::move(r);
      }
    }
    buffer.erase(buffer.begin(), buffer.begin() + static_cast<long>(at));
  }
  close(fd);
  int wstatus = 0;
  while (waitpid(child, &wstatus, 0) < 0 && errno == EINTR) {
  }
  if (final_result) return *final_result;
  if (killed) {
    incumbent.message = "stopped at the hard deadline";
    return incumbent;
  }
  SolveResult error;
  error.message = "solver process ended without a result";
  return error;
}

class HighsBackend : public SolverBackend {
 public:
  std::string name() const override { return "highs"; }

  BackendCapabilities capabilities() const override {
    BackendCapabilities caps;
    caps.warm_start = true;
    caps.time_limit = true;
    caps.gap_query = true;
    caps.bound_query = true;
    caps.concurrent_solves = false;
    return caps;
  }

 protected:
  SolveResult DoSolve(const LinearModel& model,
                      const SolveOptions& options) override {
    const auto started = std::chrono::steady_clock::now();

    HighsLp lp;
    lp.num_col_ = model.num_columns();
    lp.num_row_ = model.num_rows();
    lp.col_cost_ = model.costs();
    lp.offset_ = model.offset();
    lp.col_lower_ = model.column_lower();
    lp.col_upper_ = model.column_upper();
    lp.row_lower_ = model.row_lower();
    lp.row_upper_ = model.row_upper();
    lp.a_matrix_.format_ = MatrixFormat::kRowwise;
    lp.a_matrix_.num_col_ = lp.num_col_;
    lp.a_matrix_.num_row_ = lp.num_row_;
    lp.a_matrix_.start_.assign(model.row_starts().begin(),
                               model.row_starts().end());
    lp.a_matrix_.index_.assign(model.indices().begin(), model.indices().end());
    lp.a_matrix_.value_ = model.values();
    lp.integrality_.reserve(lp.num_col_);
    for (char integer : model.integrality()) {
      lp.integrality_.push_back(integer ? HighsVarType::kInteger
                                        : HighsVarType::kContinuous);
    }

    Highs highs;
    highs.setOptionValue("output_flag", options.verbose);
    highs.setOptionValue("threads", 1);
    highs.setOptionValue("time_limit", std::max(options.time_limit, 1e-3));
    highs.setOptionValue("mip_rel_gap", options.relative_gap);
    highs.setOptionValue("mip_abs_gap", options.absolute_gap);
    highs.setOptionValue("random_seed",
                         static_cast<HighsInt>(options.seed % 2147483647));
    if (highs.passModel(std::move(lp)) == HighsStatus::kError) {
      SolveResult result;
      result.message = "model rejected by HiGHS";
      return result;
    }
    if (options.hint) {
      HighsSolution start;
      start.col_value = *options.hint;
      start.value_valid = true;
      highs.setSolution(start);
    }

    int fds[2];
    if (pipe(fds) != 0) throw std::runtime_error("pipe failed");
    std::fflush(nullptr);
    const pid_t child = fork();
    if (child < 0) {
      close(fds[0]);
      close(fds[1]);
      throw std::runtime_error("fork failed");
    }
    if (child == 0) {
      close(fds[0]);
      RunChild(highs, options, fds[1]);
    }
    close(fds[1]);
    SolveResult result =
        ReadChild(child, fds[0], options.time_limit + options.deadline_grace);
    result.wall_time = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - started)
                           .count();
    return result;
  }
};

}  // namespace

std::unique_ptr<SolverBackend> MakeHighsBackend() {
  return std::make_unique<HighsBackend>();
}

}  // namespace orsched
