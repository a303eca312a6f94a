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

// orsched: generate instances, run the pipeline, validate and report runs,
// export Gantt data and serve stored runs over HTTP.
//
// Exit codes: 0 ok, 1 validation failure, 2 usage or input error,
// 3 solver failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orsched/core/gantt.hpp"
#include "orsched/core/io.hpp"
#include "orsched/gen/generator.hpp"
#include "orsched/mip/solver_backend.hpp"
#include "orsched/pipeline/pipeline.hpp"
#include "orsched/report/report.hpp"
#include "orsched/service/service.hpp"
#include "orsched/validate/validator.hpp"

namespace fs = std::filesystem;
using namespace orsched;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;
constexpr int kSolverFailure = 3;

// Usage or input problem, reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

NoShowMode ParseNoShowMode(const std::string& text) {
  if (text == "fixed") return NoShowMode::kFixedDelay;
  if (text == "within") return NoShowMode::kWithinDelay;
  throw UsageError("--noshow-mode must be fixed or within");
}

std::string FileStem(const std::string& cell_name) {
  std::string out;
  for (char c : cell_name) out += c == ' ' ? '_' : c;
  return out;
}

struct GenArgs {
  int n = 40;
  std::string group = "A";
  int horizon = 14;
  int rooms = 2;
  std::optional<std::uint64_t> seed;
  std::string noshow_mode = "fixed";
  bool grid = false;
  std::vector<int> sizes{40, 80, 120};
  std::optional<int> override_n;
  std::string out = ".";
};

int CmdGen(const GenArgs& a) {
  const NoShowMode mode = ParseNoShowMode(a.noshow_mode);
  if (!a.grid) {
    if (a.group.size() != 1) throw UsageError("--group takes one letter");
    GeneratorSpec spec = DefaultSpec(a.n, a.group[0], a.horizon, a.rooms);
    if (a.seed) spec.seed = *a.seed;
    Instance instance = Generate(spec);
    instance.noshow_mode = mode;
    fs::path path = a.out;
    if (fs::is_directory(path)) path /= FileStem(spec.CellName()) + ".json";
    SaveInstance(path, instance);
    std::cout << path.string() << "\n";
    return kOk;
  }
  fs::create_directories(a.out);
  Json manifest = Json::array();
  for (GeneratorSpec spec : ExperimentGrid(a.sizes)) {
    const std::string cell = spec.CellName();
    if (a.override_n) spec.n_patients = *a.override_n;
    Instance instance = Generate(spec);
    instance.noshow_mode = mode;
    const std::string file = FileStem(cell) + ".json";
    SaveInstance(fs::path(a.out) / file, instance);
    manifest.push_back({{"cell", cell}, {"instance", file}});
  }
  WriteTextFile(fs::path(a.out) / "manifest.json", Dump(manifest));
  std::cout << (fs::path(a.out) / "manifest.json").string() << "\n";
  return kOk;
}

struct SolveArgs {
  std::string instance;
  std::string variant = "heuristic";
  double time_limit = 900;
  std::optional<double> total_time_limit;
  std::uint64_t seed = 0;
  double gap = 0;
  std::optional<std::string> mu_weight;
  int epsilon = 1;
  std::optional<std::string> noshow_mode;
  bool deterministic = false;
  std::string out = ".";
};

int CmdSolve(const SolveArgs& a) {
  Instance instance = LoadInstance(a.instance);
  if (a.noshow_mode) instance.noshow_mode = ParseNoShowMode(*a.noshow_mode);
  PipelineConfig config;
  try {
    config.variant = ParsePipelineVariant(a.variant);
    if (a.mu_weight) config.mu_weight = ParseRational(*a.mu_weight);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  config.time_limit_per_step = a.time_limit;
  config.total_time_limit = a.total_time_limit;
  config.seed = a.seed;
  config.gap_tolerance = a.gap;
  config.epsilon = a.epsilon;
  config.deterministic = a.deterministic;
  auto backend = MakeHighsBackend();
  PipelineRun run;
  try {
    run = RunPipeline(instance, config, *backend, [](const StepReport& r) {
      std::cerr << FormatStepLine(r) << std::endl;
    });
  } catch (const PipelineError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  fs::path path = a.out;
  if (fs::is_directory(path)) path /= run.run_id + ".json";
  SaveRun(path, run);
  for (const std::string& w : run.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << path.string() << "\n";
  if (run.validation && !run.validation->ok()) {
    std::cerr << run.validation->violations.size()
              << " validation violations\n";
    return kInvalid;
  }
  return kOk;
}

int CmdValidate(const std::string& file, bool room_local, bool json) {
  const PipelineRun run = LoadRun(file);
  ValidatorOptions options;
  options.room_local_impact = room_local;
  const ValidationReport report = ValidateRun(run, options);
  if (json) {
    std::cout << Dump(ReportToJson(report));
  } else {
    for (const Violation& v : report.violations) {
      std::cout << "violation " << v.family << ": " << v.message << "\n";
    }
    for (const std::string& w : report.warnings) {
      std::cout << "warning: " << w << "\n";
    }
    std::cout << (report.ok() ? "ok" : "invalid") << ": "
              << report.violations.size() << " violations, "
              << report.warnings.size() << " warnings\n";
  }
  return report.ok() ? kOk : kInvalid;
}

int CmdReport(const std::vector<std::string>& files, const std::string& format,
              const std::optional<std::string>& csv_out) {
  std::vector<PipelineRun> runs;
  for (const std::string& f : files) runs.push_back(LoadRun(f));
  const std::vector<ResultRow> rows = BuildResultRows(runs);
  if (csv_out) WriteTextFile(*csv_out, FormatCsv(rows));
  if (format == "csv") {
    std::cout << FormatCsv(rows);
  } else if (format == "aligned") {
    std::cout << FormatAligned(rows);
  } else {
    throw UsageError("--format must be csv or aligned");
  }
  return kOk;
}

struct GanttArgs {
  std::string run;
  std::optional<int> h;
  std::optional<int> l;
  std::optional<int> g;
  std::optional<std::string> patient;
  std::optional<std::string> out;
};

int CmdGantt(const GanttArgs& a) {
  const PipelineRun run = LoadRun(a.run);
  const Instance& instance = run.instance;
  std::vector<GanttEntry> entries;
  if (a.patient && (a.h || a.l)) {
    throw UsageError("give either --patient or --h/--l, not both");
  }
  const int g = a.g ? *a.g - 1 : instance.robust_days.front();
  if (a.h || a.l) {
    if (!a.h || !a.l) throw UsageError("emergency scenarios need --h and --l");
    const BackupPlan* plan = run.FindEmergency(EmergencyKey{*a.h, g, *a.l - 1});
    if (!plan) {
      std::cerr << "not found: no emergency back-up for h=" << *a.h
                << " l=" << *a.l << " g=" << g + 1 << "\n";
      return kUsage;
    }
    entries = BackupGantt(instance, run.plan, *plan);
  } else if (a.patient) {
    const auto b = instance.PatientIndex(*a.patient);
    const BackupPlan* plan = nullptr;
    if (b) {
      int day = g;
      const auto& placed = run.plan.assignment[*b];
      if (!a.g && placed && instance.RobustIndex(placed->day)) day = placed->day;
      plan = run.FindNoShow(NoShowKey{*b, day});
    }
    if (!plan) {
      std::cerr << "not found: no no-show back-up for patient " << *a.patient
                << "\n";
      return kUsage;
    }
    entries = BackupGantt(instance, run.plan, *plan);
  } else {
    entries = NominalGantt(instance, run.plan);
  }
  const std::string text = Dump(GanttToJson(entries));
  if (a.out) {
    WriteTextFile(*a.out, text);
  } else {
    std::cout << text;
  }
  return kOk;
}

struct ServeArgs {
  std::vector<std::string> runs;
  std::string events = "events";
  std::string host = "127.0.0.1";
  int port = 8080;
};

int CmdServe(ServeArgs a) {
  if (a.runs.empty()) {
    if (const char* dir = std::getenv("ORSCHED_RUN_DIR")) a.runs.push_back(dir);
  }
  if (a.runs.empty()) throw UsageError("no runs given (--runs or ORSCHED_RUN_DIR)");
  std::vector<PipelineRun> runs;
  for (const std::string& item : a.runs) {
    if (fs::is_directory(item)) {
      for (PipelineRun& r : ServiceCore::LoadRunDirectory(item)) {
        runs.push_back(std::move(r));
      }
    } else {
      runs.push_back(LoadRun(item));
    }
  }
  ServiceCore core(std::move(runs), a.events);
  HttpService http(core);
  if (!http.Bind(a.host, a.port)) {
    throw UsageError("cannot bind " + a.host + ":" + std::to_string(a.port));
  }
  std::cerr << "serving on http://" << a.host << ":" << a.port << "\n";
  return http.ListenAfterBind() ? kOk : kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Surgery scheduling with emergency and no-show back-up plans"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate instances");
  gen_cmd->add_option("-n,--patients", gen.n, "Number of patients");
  gen_cmd->add_option("--group", gen.group, "Patient group A-D");
  gen_cmd->add_option("--horizon", gen.horizon, "Days in the horizon");
  gen_cmd->add_option("--rooms", gen.rooms, "Operating rooms");
  gen_cmd->add_option("--seed", gen.seed, "Override the cell seed");
  gen_cmd->add_option("--noshow-mode", gen.noshow_mode, "fixed or within");
  gen_cmd->add_flag("--grid", gen.grid, "Write the whole experiment grid");
  gen_cmd->add_option("--sizes", gen.sizes, "List sizes of the grid");
  gen_cmd->add_option("--override-patients", gen.override_n,
                      "Patients per grid cell, keeping cell seeds");
  gen_cmd->add_option("-o,--out", gen.out, "Output file or directory");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run the pipeline");
  solve_cmd->add_option("instance", solve.instance, "Instance file")->required();
  solve_cmd->add_option("--variant", solve.variant, "warm-start or heuristic");
  solve_cmd->add_option("--time-limit", solve.time_limit, "Seconds per step");
  solve_cmd->add_option("--total-time-limit", solve.total_time_limit,
                        "Seconds for all steps");
  solve_cmd->add_option("--seed", solve.seed, "Solver seed");
  solve_cmd->add_option("--gap", solve.gap, "Relative gap tolerance");
  solve_cmd->add_option("--mu-weight", solve.mu_weight,
                        "Weight of dropped patients, e.g. 480 or 3/2");
  solve_cmd->add_option("--epsilon", solve.epsilon, "Slots");
  solve_cmd->add_option("--noshow-mode", solve.noshow_mode, "fixed or within");
  solve_cmd->add_flag("--deterministic", solve.deterministic,
                      "Leave wall times out of the run document");
  solve_cmd->add_option("-o,--out", solve.out, "Output file or directory");

  std::string validate_file;
  bool room_local = false;
  bool validate_json = false;
  auto* validate_cmd = app.add_subcommand("validate", "Validate a run");
  validate_cmd->add_option("run", validate_file, "Run file")->required();
  validate_cmd->add_flag("--room-local", room_local,
                         "Impact only in the emergency's room");
  validate_cmd->add_flag("--json", validate_json, "Print the report as JSON");

  std::vector<std::string> report_files;
  std::string report_format = "aligned";
  std::optional<std::string> report_csv;
  auto* report_cmd = app.add_subcommand("report", "Results table");
  report_cmd->add_option("runs", report_files, "Run files")->required();
  report_cmd->add_option("--format", report_format, "csv or aligned");
  report_cmd->add_option("--csv", report_csv, "Also write CSV here");

  GanttArgs gantt;
  auto* gantt_cmd = app.add_subcommand("gantt", "Gantt JSON of a plan");
  gantt_cmd->set_help_flag("--help", "Print this help message and exit");
  gantt_cmd->add_option("run", gantt.run, "Run file")->required();
  gantt_cmd->add_option("--h", gantt.h, "Emergency slot (0-based)");
  gantt_cmd->add_option("--l", gantt.l, "Emergency length class (1-based)");
  gantt_cmd->add_option("--g", gantt.g, "Robust day (1-based)");
  gantt_cmd->add_option("--patient", gantt.patient, "No-show patient id");
  gantt_cmd->add_option("-o,--out", gantt.out, "Output file");

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Serve runs over HTTP");
  serve_cmd->add_option("--runs", serve.runs, "Run files or directories");
  serve_cmd->add_option("--events", serve.events, "Event log directory");
  serve_cmd->add_option("--host", serve.host, "Bind address");
  serve_cmd->add_option("--port", serve.port, "Port");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_cmd) return CmdGen(gen);
    if (*solve_cmd) return CmdSolve(solve);
    if (*validate_cmd) {
      return CmdValidate(validate_file, room_local, validate_json);
    }
    if (*report_cmd) return CmdReport(report_files, report_format, report_csv);
    if (*gantt_cmd) return CmdGantt(gantt);
    if (*serve_cmd) return CmdServe(serve);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidInstance& e) {
    std::cerr << "error: invalid instance: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidSpec& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ReportError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
