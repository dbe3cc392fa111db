// Copyright 2026 The ctrlgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ctrlgame/render.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "ctrlgame/dsl.h"
#include "ctrlgame/error.h"
#include "ctrlgame/json_io.h"

namespace ctrlgame::render {

using nlohmann::json;

Budget EffectiveBudget(const ModelSpec& spec, const Overrides& o) {
  return Budget(o.budget.value_or(spec.budget));
}

const AttackerProfile& RequireProfile(const ModelSpec& spec, const Overrides& o) {
  if (!o.profile) throw ModelError("missing-profile", "a profile name is required");
  const AttackerProfile* p = spec.find_profile(*o.profile);
  if (!p) throw ModelError("unknown-profile", "unknown profile '" + *o.profile + "'");
  return *p;
}

json DiagnosticJson(const Diagnostic& d) {
  json location = json::object();
  if (d.location.line > 0) {
    location["line"] = d.location.line;
    location["column"] = d.location.column;
  } else {
    location["path"] = d.location.path;
  }
  return {{"severity", d.severity == Severity::kError ? "error" : "warning"},
          {"code", d.code},
          {"message", d.message},
          {"location", std::move(location)}};
}

namespace {

json Header(const char* command) {
  return {{"schema_version", kSchemaVersion}, {"command", command}};
}

json DiagnosticsJson(const std::vector<Diagnostic>& diags) {
  json out = json::array();
  for (const auto& d : diags) out.push_back(DiagnosticJson(d));
  return out;
}

json ControlsJson(const ModelSpec& spec, const Combination& c) {
  json out = json::array();
  for (const auto& id : spec.catalog_order(c)) out.push_back(id.str());
  return out;
}

json StrategyJson(const ModelSpec& spec, const Strategy& s, const CostTable& costs) {
  return {{"id", s.id},
          {"label", spec.display(s.combination)},
          {"controls", ControlsJson(spec, s.combination)},
          {"cost", CombinationCost(s.combination, costs)}};
}

json PlayJson(const ModelSpec& spec, const GameMatrix& gm, const AttackerProfile& profile,
              const PlayResult& r) {
  json stages = json::array();
  for (std::size_t s = 0; s < r.stages.size(); ++s) {
    const auto& st = r.stages[s];
    json cells = json::array();
    for (const auto& c : profile.stages[s].cells) cells.push_back(c.key());
    json candidates = json::array();
    for (const auto& [row, total] : st.candidates) {
      candidates.push_back({{"id", gm.rows()[row].id}, {"total", total}});
    }
    json survivors = json::array();
    for (std::size_t row : st.survivors) survivors.push_back(gm.rows()[row].id);
    stages.push_back({{"index", st.index},
                      {"cells", std::move(cells)},
                      {"candidates", std::move(candidates)},
                      {"survivors", std::move(survivors)},
                      {"best", st.best}});
  }
  json suggested = json::array();
  json suggested_ids = json::array();
  for (std::size_t row : SuggestedForDisplay(r, gm, spec.cost_table())) {
    suggested.push_back(spec.display(gm.rows()[row].combination));
    suggested_ids.push_back(gm.rows()[row].id);
  }
  return {{"stages", std::move(stages)},
          {"suggested", std::move(suggested)},
          {"suggested_ids", std::move(suggested_ids)},
          {"trace", r.trace}};
}

}  // namespace

json ValidatePayload(const std::string& source, const std::vector<Diagnostic>& diags) {
  json out = Header("validate");
  out["source"] = source;
  out["ok"] = !HasErrors(diags);
  out["diagnostics"] = DiagnosticsJson(diags);
  return out;
}

json ErrorPayload(const std::string& code, const std::string& message,
                  const std::vector<Diagnostic>& diags) {
  json out = {{"schema_version", kSchemaVersion}, {"error", code}, {"message", message}};
  out["diagnostics"] = DiagnosticsJson(diags);
  return out;
}

json ExpandPayload(const ModelSpec& spec, const Overrides& o) {
  const Budget budget = EffectiveBudget(spec, o);
  const CostTable costs = spec.cost_table();
  json rows = json::array();
  std::size_t valid_count = 0;
  for (const auto& s : ExpandModel(spec)) {
    json row = StrategyJson(spec, s, costs);
    const bool valid = IsValid(s.combination, costs, budget);
    valid_count += valid;
    row["valid"] = valid;
    rows.push_back(std::move(row));
  }
  json out = Header("expand");
  out["model"] = spec.name;
  out["budget"] = budget.value();
  out["combinations"] = std::move(rows);
  out["valid_count"] = valid_count;
  return out;
}

json MatrixPayload(const ModelSpec& spec, const Overrides& o) {
  const Budget budget = EffectiveBudget(spec, o);
  const GameMatrix gm = BuildModelMatrix(spec, budget);
  const CostTable costs = spec.cost_table();
  json columns = json::array();
  for (const auto& c : gm.columns()) columns.push_back(c.key());
  json rows = json::array();
  for (std::size_t r = 0; r < gm.row_count(); ++r) {
    json row = StrategyJson(spec, gm.rows()[r], costs);
    row["payoff"] = gm.row(r);
    rows.push_back(std::move(row));
  }
  json out = Header("matrix");
  out["model"] = spec.name;
  out["budget"] = budget.value();
  out["columns"] = std::move(columns);
  out["rows"] = std::move(rows);
  return out;
}

json PlayPayload(const ModelSpec& spec, const Overrides& o) {
  const AttackerProfile& profile = RequireProfile(spec, o);
  const Budget budget = EffectiveBudget(spec, o);
  const GameMatrix gm = BuildModelMatrix(spec, budget);
  const PlayResult r = Play(gm, profile);
  json out = Header("play");
  out["model"] = spec.name;
  out["budget"] = budget.value();
  out["profile"] = profile.name;
  out.update(PlayJson(spec, gm, profile, r));
  return out;
}

json SweepPayload(const ModelSpec& spec, const Overrides& o, const std::vector<double>& budgets) {
  const AttackerProfile& profile = RequireProfile(spec, o);
  if (budgets.empty()) throw ModelError("missing-budgets", "at least one budget is required");
  std::vector<Budget> typed;
  for (double b : budgets) typed.emplace_back(b);
  json entries = json::array();
  for (const auto& e : BudgetSweep(spec, typed, profile)) {
    json entry = {{"budget", e.budget.value()}};
    if (e.result) {
      json strategies = json::array();
      for (const auto& s : e.matrix->rows()) strategies.push_back(s.id);
      entry["status"] = "ok";
      entry["strategies"] = std::move(strategies);
      entry.update(PlayJson(spec, *e.matrix, profile, *e.result));
    } else {
      entry["status"] = e.error_code;
      entry["message"] = e.error_message;
    }
    entries.push_back(std::move(entry));
  }
  json out = Header("sweep");
  out["model"] = spec.name;
  out["profile"] = profile.name;
  out["entries"] = std::move(entries);
  return out;
}

json SensitivityPayload(const ModelSpec& spec, const Overrides& o, double delta,
                        bool include_zero_entries) {
  const AttackerProfile& profile = RequireProfile(spec, o);
  ModelSpec at_budget = spec;
  at_budget.budget = EffectiveBudget(spec, o).value();
  const auto report =
      SensitivityScan(at_budget, profile, delta, {.include_zero_entries = include_zero_entries});
  json baseline = json::array();
  json baseline_ids = json::array();
  for (const auto& s : report.baseline) {
    baseline.push_back(spec.display(s.combination));
    baseline_ids.push_back(s.id);
  }
  json entries = json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"control", e.control.str()},
                       {"cell", e.cell.key()},
                       {"original", e.original},
                       {"lowered", e.lowered},
                       {"raised", e.raised},
                       {"changed_when_lowered", e.changed_when_lowered},
                       {"changed_when_raised", e.changed_when_raised},
                       {"stable", e.stable()}});
  }
  json out = Header("sensitivity");
  out["model"] = spec.name;
  out["budget"] = at_budget.budget;
  out["profile"] = profile.name;
  out["delta"] = delta;
  out["baseline"] = std::move(baseline);
  out["baseline_ids"] = std::move(baseline_ids);
  out["entries"] = std::move(entries);
  out["unstable_count"] = report.unstable_count();
  out["stable_count"] = report.entries.size() - report.unstable_count();
  return out;
}

json ResidualPayload(const ModelSpec& spec, const Overrides& o, const std::string& combination_id,
                     double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ModelError("invalid-threshold", "threshold must lie in [0,1]");
  }
  const Budget budget = EffectiveBudget(spec, o);
  const GameMatrix gm = BuildModelMatrix(spec, budget);
  const auto row = gm.find_row(combination_id);
  if (!row) {
    throw ModelError("unknown-row", "'" + combination_id + "' is not a valid strategy at budget " +
                                        FormatNumber(budget.value()));
  }
  const auto& chosen = gm.rows()[*row];
  json cells = json::array();
  for (const auto& [cell, eff] : ResidualRiskReport(chosen.combination, gm, threshold)) {
    cells.push_back({{"cell", cell.key()}, {"effectiveness", eff}});
  }
  json out = Header("residual");
  out["model"] = spec.name;
  out["budget"] = budget.value();
  out["id"] = chosen.id;
  out["label"] = spec.display(chosen.combination);
  out["threshold"] = threshold;
  out["cells"] = std::move(cells);
  return out;
}

std::string DumpJson(const json& payload) { return payload.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Table / CSV views

namespace {

using Grid = std::vector<std::vector<std::string>>;

std::string Num(const json& v, bool full) {
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_string()) return v.get<std::string>();
  if (!v.is_number()) return v.dump();
  const double d = v.get<double>();
  if (full) return FormatNumber(d);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", d);
  return buf;
}

std::string Join(const json& arr, const char* sep) {
  std::string out;
  for (const auto& v : arr) {
    if (!out.empty()) out += sep;
    out += v.is_string() ? v.get<std::string>() : v.dump();
  }
  return out;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string RenderGrid(const Grid& grid, bool csv) {
  std::ostringstream out;
  if (csv) {
    for (const auto& row : grid) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << CsvField(row[i]);
      out << "\n";
    }
    return out.str();
  }
  std::vector<std::size_t> width;
  for (const auto& row : grid) {
    width.resize(std::max(width.size(), row.size()));
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  for (std::size_t r = 0; r < grid.size(); ++r) {
    std::string line;
    for (std::size_t i = 0; i < grid[r].size(); ++i) {
      if (i) line += "  ";
      line += grid[r][i];
      if (i + 1 < grid[r].size()) line += std::string(width[i] - grid[r][i].size(), ' ');
    }
    out << line << "\n";
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t w : width) total += w;
      out << std::string(total + 2 * (width.empty() ? 0 : width.size() - 1), '-') << "\n";
    }
  }
  return out.str();
}

Grid ExpandGrid(const json& p, bool full) {
  Grid g{{"id", "combination", "cost", "valid"}};
  for (const auto& r : p["combinations"]) {
    g.push_back({r["id"], r["label"], Num(r["cost"], full), Num(r["valid"], full)});
  }
  return g;
}

Grid MatrixGrid(const json& p, bool full) {
  Grid g{{"id", "combination"}};
  for (const auto& c : p["columns"]) g[0].push_back(c);
  for (const auto& r : p["rows"]) {
    std::vector<std::string> row{r["id"], r["label"]};
    for (const auto& v : r["payoff"]) row.push_back(Num(v, full));
    g.push_back(std::move(row));
  }
  return g;
}

void AppendPlayRows(Grid& g, const json& play, const std::vector<std::string>& prefix,
                    bool full) {
  for (const auto& st : play["stages"]) {
    const auto& survivors = st["survivors"];
    for (const auto& c : st["candidates"]) {
      const bool kept = std::find(survivors.begin(), survivors.end(), c["id"]) != survivors.end();
      std::vector<std::string> row = prefix;
      row.insert(row.end(), {Num(st["index"], true), Join(st["cells"], " "), c["id"],
                             Num(c["total"], full), kept ? "yes" : "no"});
      g.push_back(std::move(row));
    }
  }
}

Grid PlayGrid(const json& p, bool full) {
  Grid g{{"stage", "cells", "id", "total", "kept"}};
  AppendPlayRows(g, p, {}, full);
  return g;
}

Grid SweepGrid(const json& p, bool) {
  Grid g{{"budget", "status", "strategies", "suggested"}};
  for (const auto& e : p["entries"]) {
    const bool ok = e["status"] == "ok";
    g.push_back({Num(e["budget"], true), e["status"], ok ? Join(e["strategies"], " ") : "",
                 ok ? Join(e["suggested"], " | ") : e.value("message", "")});
  }
  return g;
}

Grid SensitivityGrid(const json& p, bool full) {
  Grid g{{"control", "cell", "original", "lowered", "raised", "changed_lowered",
          "changed_raised", "stable"}};
  for (const auto& e : p["entries"]) {
    g.push_back({e["control"], e["cell"], Num(e["original"], full), Num(e["lowered"], full),
                 Num(e["raised"], full), Num(e["changed_when_lowered"], full),
                 Num(e["changed_when_raised"], full), Num(e["stable"], full)});
  }
  return g;
}

Grid ResidualGrid(const json& p, bool full) {
  Grid g{{"cell", "effectiveness"}};
  for (const auto& c : p["cells"]) g.push_back({c["cell"], Num(c["effectiveness"], full)});
  return g;
}

Grid ValidateGrid(const json& p, bool) {
  Grid g{{"severity", "location", "code", "message"}};
  for (const auto& d : p["diagnostics"]) {
    const auto& loc = d["location"];
    std::string where = loc.contains("path")
                            ? loc["path"].get<std::string>()
                            : Num(loc["line"], true) + ":" + Num(loc["column"], true);
    g.push_back({d["severity"], where, d["code"], d["message"]});
  }
  return g;
}

}  // namespace

std::string FormatPayload(const json& payload, Format format) {
  if (format == Format::kJson) return DumpJson(payload);
  const bool csv = format == Format::kCsv;
  const std::string command = payload.value("command", "");
  Grid grid;
  std::string preface;
  std::string footer;
  if (command == "expand") {
    grid = ExpandGrid(payload, csv);
    preface = "budget " + Num(payload["budget"], true) + ": " +
              Num(payload["valid_count"], true) + " of " +
              std::to_string(payload["combinations"].size()) + " combinations valid\n";
  } else if (command == "matrix") {
    grid = MatrixGrid(payload, csv);
  } else if (command == "play") {
    grid = PlayGrid(payload, csv);
    preface = "profile " + payload["profile"].get<std::string>() + " at budget " +
              Num(payload["budget"], true) + "\n";
    footer = "suggested: " + Join(payload["suggested"], " | ") + "\n";
  } else if (command == "sweep") {
    grid = SweepGrid(payload, csv);
  } else if (command == "sensitivity") {
    grid = SensitivityGrid(payload, csv);
    preface = "baseline: " + Join(payload["baseline"], " | ") + "\n";
    footer = Num(payload["unstable_count"], true) + " unstable of " +
             std::to_string(payload["entries"].size()) + " entries\n";
  } else if (command == "residual") {
    grid = ResidualGrid(payload, csv);
    preface = payload["id"].get<std::string>() + " (" + payload["label"].get<std::string>() +
              ") below " + Num(payload["threshold"], true) + "\n";
  } else if (command == "validate") {
    grid = ValidateGrid(payload, csv);
    footer = payload["ok"].get<bool>() ? "ok\n" : "invalid\n";
  } else {
    return DumpJson(payload);
  }
  if (csv) return RenderGrid(grid, true);
  return preface + RenderGrid(grid, false) + footer;
}

}  // namespace ctrlgame::render
