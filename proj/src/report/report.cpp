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

#include "orsched/report/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <regex>
#include <tuple>

namespace orsched {
namespace {

std::string Number(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", *v);
  return buf;
}

std::string Percent(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f%%", *v);
  return buf;
}

std::optional<double> AsDouble(const std::optional<Rational>& r) {
  if (!r) return std::nullopt;
  return ToDouble(*r);
}

std::optional<double> Gap(const std::optional<Rational>& of,
                          const std::optional<double>& lb) {
  if (!of || !lb || *lb == 0) return std::nullopt;
  return (ToDouble(*of) - *lb) / *lb * 100.0;
}

const std::vector<std::string>& Header() {
  static const std::vector<std::string> header{
      "ID",     "|D|",      "|J|",       "OF",
      "LB_WS",  "OF_WS",    "OF_Heu",    "OF_WS-OF",
      "OF_Heu-OF", "(OF_WS-LB_WS)/LB_WS", "(OF_Heu-LB_WS)/LB_WS"};
  return header;
}

std::vector<std::vector<std::string>> Cells(const std::vector<ResultRow>& rows) {
  std::vector<std::vector<std::string>> out{Header()};
  for (const ResultRow& r : rows) {
    out.push_back({r.id, std::to_string(r.days), std::to_string(r.rooms),
                   Number(AsDouble(r.of)), Number(r.lb_ws),
                   Number(AsDouble(r.of_ws)), Number(AsDouble(r.of_heu)),
                   Number(r.DiffWs()), Number(r.DiffHeu()), Percent(r.GapWs()),
                   Percent(r.GapHeu())});
  }
  const AverageRow avg = Average(rows);
  out.push_back({"Average", "", "", Number(avg.of), Number(avg.lb_ws),
                 Number(avg.of_ws), Number(avg.of_heu), Number(avg.diff_ws),
                 Number(avg.diff_heu), Percent(avg.gap_ws),
                 Percent(avg.gap_heu)});
  return out;
}

// Leading list size of an id, for numeric ordering.
int SizeOf(const std::string& id) {
  try {
    return std::stoi(id);
  } catch (const std::exception&) {
    return 0;
  }
}

}  // namespace

std::optional<double> ResultRow::DiffWs() const {
  if (!of || !of_ws) return std::nullopt;
  return ToDouble(*of_ws - *of);
}

std::optional<double> ResultRow::DiffHeu() const {
  if (!of || !of_heu) return std::nullopt;
  return ToDouble(*of_heu - *of);
}

std::optional<double> ResultRow::GapWs() const { return Gap(of_ws, lb_ws); }
std::optional<double> ResultRow::GapHeu() const { return Gap(of_heu, lb_ws); }

std::string ListIdOf(const std::string& name) {
  static const std::regex suffix(R"(^(.*\S)\s+\d+x\d+$)");
  std::smatch m;
  if (std::regex_match(name, m, suffix)) return m[1];
  return name;
}

std::vector<ResultRow> BuildResultRows(const std::vector<PipelineRun>& runs) {
  using Key = std::tuple<int, std::string, int, int>;
  std::map<Key, ResultRow> cells;
  std::map<Key, std::pair<bool, bool>> seen;  // (warm start, heuristic)
  for (const PipelineRun& run : runs) {
    const std::string id = ListIdOf(run.instance.name);
    const Key key{SizeOf(id), id, run.instance.horizon_days,
                  run.instance.rooms};
    ResultRow& row = cells[key];
    row.id = id;
    row.days = run.instance.horizon_days;
    row.rooms = run.instance.rooms;
    auto& [ws, heu] = seen[key];
    if (run.config.variant == PipelineVariant::kWarmStart) {
      if (ws) throw ReportError("two warm-start runs for " + run.instance.name);
      ws = true;
      row.of = run.nominal_objective;
      if (std::isfinite(run.complete_bound)) row.lb_ws = run.complete_bound;
      row.of_ws = run.complete_objective;
    } else {
      if (heu) throw ReportError("two heuristic runs for " + run.instance.name);
      heu = true;
      if (!row.of) row.of = run.nominal_objective;
      row.of_heu = run.complete_objective;
    }
  }
  std::vector<ResultRow> rows;
  for (auto& [key, row] : cells) rows.push_back(std::move(row));
  return rows;
}

AverageRow Average(const std::vector<ResultRow>& rows) {
  auto mean = [&](auto get) -> std::optional<double> {
    double sum = 0;
    int n = 0;
    for (const ResultRow& r : rows) {
      if (const std::optional<double> v = get(r)) {
        sum += *v;
        ++n;
      }
    }
    if (n == 0) return std::nullopt;
    return sum / n;
  };
  AverageRow a;
  a.of = mean([](const ResultRow& r) { return AsDouble(r.of); });
  a.lb_ws = mean([](const ResultRow& r) { return r.lb_ws; });
  a.of_ws = mean([](const ResultRow& r) { return AsDouble(r.of_ws); });
  a.of_heu = mean([](const ResultRow& r) { return AsDouble(r.of_heu); });
  a.diff_ws = mean([](const ResultRow& r) { return r.DiffWs(); });
  a.diff_heu = mean([](const ResultRow& r) { return r.DiffHeu(); });
  a.gap_ws = mean([](const ResultRow& r) { return r.GapWs(); });
  a.gap_heu = mean([](const ResultRow& r) { return r.GapHeu(); });
  return a;
}

std::string FormatCsv(const std::vector<ResultRow>& rows) {
  std::string out;
  for (const auto& line : Cells(rows)) {
    for (std::size_t k = 0; k < line.size(); ++k) {
      if (k) out += ',';
      out += line[k];
    }
    out += '\n';
  }
  return out;
}

std::string FormatAligned(const std::vector<ResultRow>& rows) {
  const auto table = Cells(rows);
  std::vector<std::size_t> width(Header().size(), 0);
  for (const auto& line : table) {
    for (std::size_t k = 0; k < line.size(); ++k) {
      width[k] = std::max(width[k], line[k].size());
    }
  }
  std::string out;
  for (const auto& line : table) {
    std::string text;
    for (std::size_t k = 0; k < line.size(); ++k) {
      if (k) text += "  ";
      const std::string pad(width[k] - line[k].size(), ' ');
      // ID left-aligned, numbers right-aligned.
      text += k == 0 ? line[k] + pad : pad + line[k];
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out += text + '\n';
  }
  return out;
}

}  // namespace orsched
