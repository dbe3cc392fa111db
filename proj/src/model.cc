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

#include "ctrlgame/model.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ctrlgame/dsl.h"
#include "ctrlgame/error.h"
#include "ctrlgame/json_io.h"

namespace ctrlgame {

std::string Location::to_string() const {
  if (line > 0) return std::to_string(line) + ":" + std::to_string(column);
  return path.empty() ? "<model>" : path;
}

std::string Diagnostic::to_string() const {
  return location.to_string() + ": " +
         (severity == Severity::kError ? "error" : "warning") + ": " + message + " [" +
         code + "]";
}

bool HasErrors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::kError; });
}

std::vector<Cell> ModelSpec::cells() const {
  std::vector<Cell> out;
  out.reserve(assets.size() * objectives.size());
  for (const auto& a : assets) {
    for (const auto& o : objectives) out.push_back({a, o});
  }
  return out;
}

CostTable ModelSpec::cost_table() const {
  CostTable g;
  for (const auto& c : controls) g.set(c.id, c.cost);
  return g;
}

AtomicPayoff ModelSpec::atomic_payoff() const {
  AtomicPayoff e;
  for (const auto& c : controls) {
    for (const auto& p : c.payoff) e.set(c.id, p.cell, p.eff.value);
  }
  return e;
}

const ControlSpec* ModelSpec::find_control(const ControlId& id) const {
  for (const auto& c : controls) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

const AttackerProfile* ModelSpec::find_profile(const std::string& profile_name) const {
  for (const auto& p : profiles) {
    if (p.name == profile_name) return &p;
  }
  return nullptr;
}

std::vector<ControlId> ModelSpec::catalog_order(const Combination& c) const {
  auto rank = [this](const ControlId& id) {
    for (std::size_t i = 0; i < controls.size(); ++i) {
      if (controls[i].id == id) return i;
    }
    return controls.size();
  };
  std::vector<ControlId> out(c.begin(), c.end());
  std::stable_sort(out.begin(), out.end(), [&](const ControlId& a, const ControlId& b) {
    return rank(a) < rank(b);
  });
  return out;
}

std::string ModelSpec::display(const Combination& c) const {
  std::string out;
  for (const auto& id : catalog_order(c)) {
    if (!out.empty()) out += ' ';
    out += id.str();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

class Collector {
 public:
  void Error(std::string path, std::string code, std::string message) {
    Add(Severity::kError, std::move(path), std::move(code), std::move(message));
  }
  void Warn(std::string path, std::string code, std::string message) {
    Add(Severity::kWarning, std::move(path), std::move(code), std::move(message));
  }
  std::vector<Diagnostic> Take() { return std::move(out_); }
  bool has_errors() const { return HasErrors(out_); }

 private:
  void Add(Severity s, std::string path, std::string code, std::string message) {
    Diagnostic d;
    d.severity = s;
    d.location.path = std::move(path);
    d.code = std::move(code);
    d.message = std::move(message);
    out_.push_back(std::move(d));
  }
  std::vector<Diagnostic> out_;
};

std::string Index(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

void CheckIdList(const std::vector<std::string>& ids, const std::string& path,
                 const std::string& what, Collector& diags) {
  if (ids.empty()) diags.Error(path, "missing-" + what + "s", "no " + what + "s declared");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!IsValidToken(ids[i])) {
      diags.Error(Index(path, i), "invalid-id", "invalid " + what + " id '" + ids[i] + "'");
    }
    if (!seen.insert(ids[i]).second) {
      diags.Error(Index(path, i), "duplicate-declaration",
                  "duplicate " + what + " '" + ids[i] + "'");
    }
  }
}

void CheckCell(const ModelSpec& spec, const Cell& cell, const std::string& path,
               Collector& diags) {
  if (std::find(spec.assets.begin(), spec.assets.end(), cell.asset) == spec.assets.end()) {
    diags.Error(path, "unknown-asset", "unknown asset '" + cell.asset + "'");
  }
  if (std::find(spec.objectives.begin(), spec.objectives.end(), cell.objective) ==
      spec.objectives.end()) {
    diags.Error(path, "unknown-objective", "unknown objective '" + cell.objective + "'");
  }
}

void CheckTermAtoms(const ModelSpec& spec, const Term& t, const std::string& path,
                    Collector& diags) {
  for (const auto& id : t.atoms()) {
    if (!spec.find_control(id)) {
      diags.Error(path, "unknown-control", "unknown control '" + id.str() + "'");
    }
  }
}

}  // namespace

std::vector<Diagnostic> Validate(const ModelSpec& spec, const ValidateOptions& options) {
  Collector diags;

  for (std::size_t i = 0; i < spec.scale.labels().size(); ++i) {
    const auto& label = spec.scale.labels()[i].first;
    if (!IsValidToken(label)) {
      diags.Error(Index("$.scale", i), "invalid-id", "invalid scale label '" + label + "'");
    }
  }
  CheckIdList(spec.assets, "$.assets", "asset", diags);
  CheckIdList(spec.objectives, "$.objectives", "objective", diags);

  if (spec.controls.empty()) diags.Error("$.controls", "missing-controls", "no controls declared");
  std::set<ControlId> control_ids;
  std::set<Cell> cells_with_payoff;
  for (std::size_t i = 0; i < spec.controls.size(); ++i) {
    const auto& c = spec.controls[i];
    const std::string path = Index("$.controls", i);
    if (!IsValidToken(c.id.str())) {
      diags.Error(path + ".id", "invalid-id", "invalid control id '" + c.id.str() + "'");
    }
    if (!control_ids.insert(c.id).second) {
      diags.Error(path + ".id", "duplicate-declaration",
                  "duplicate control '" + c.id.str() + "'");
    }
    if (!std::isfinite(c.cost) || c.cost < 0.0) {
      diags.Error(path + ".cost", "negative-cost", "negative cost not supported");
    }
    std::set<Cell> seen;
    bool any_nonzero = false;
    for (std::size_t j = 0; j < c.payoff.size(); ++j) {
      const auto& p = c.payoff[j];
      const std::string ppath = Index(path + ".payoff", j);
      CheckCell(spec, p.cell, ppath, diags);
      if (!seen.insert(p.cell).second) {
        diags.Error(ppath, "duplicate-declaration",
                    "duplicate payoff entry for " + p.cell.key());
      }
      if (!(p.eff.value >= 0.0 && p.eff.value <= 1.0)) {
        diags.Error(ppath, "effectiveness-range", "effectiveness outside [0,1]");
      }
      if (p.eff.label) {
        const auto v = spec.scale.lookup(*p.eff.label);
        if (!v) {
          diags.Error(ppath, "unknown-label", "unknown scale label '" + *p.eff.label + "'");
        } else if (*v != p.eff.value) {
          diags.Error(ppath, "label-mismatch",
                      "value does not match scale label '" + *p.eff.label + "'");
        }
      }
      cells_with_payoff.insert(p.cell);
      any_nonzero = any_nonzero || p.eff.value > 0.0;
    }
    if (!any_nonzero) {
      diags.Warn(path, "zero-payoff-control",
                 "control '" + c.id.str() + "' is not effective for any cell");
    }
  }

  CheckTermAtoms(spec, spec.family, "$.family", diags);
  const auto family_atoms = spec.family.atoms();
  for (std::size_t i = 0; i < spec.controls.size(); ++i) {
    if (!family_atoms.count(spec.controls[i].id)) {
      diags.Warn(Index("$.controls", i), "unused-control",
                 "control '" + spec.controls[i].id.str() + "' does not occur in the family");
    }
  }

  for (std::size_t i = 0; i < spec.requirements.size(); ++i) {
    const auto& r = spec.requirements[i];
    const std::string path = Index("$.requirements", i);
    CheckTermAtoms(spec, r.antecedent, path + ".antecedent", diags);
    CheckTermAtoms(spec, r.consequent, path + ".consequent", diags);
    if (r.antecedent.contains_zero() || r.consequent.contains_zero()) {
      diags.Error(path, "requirement-zero", "requirement terms may not contain 0");
    } else if (Normalize(r.antecedent).empty() || Normalize(r.consequent).empty()) {
      diags.Error(path, "refines-zero", "requirement term normalizes to the empty family");
    }
  }

  if (!std::isfinite(spec.budget) || spec.budget < 0.0) {
    diags.Error("$.budget", "negative-budget", "budget must be a finite non-negative number");
  }

  if (spec.profiles.empty()) diags.Error("$.profiles", "missing-profile", "no profiles declared");
  std::set<std::string> profile_names;
  std::set<Cell> targeted;
  for (std::size_t i = 0; i < spec.profiles.size(); ++i) {
    const auto& p = spec.profiles[i];
    const std::string path = Index("$.profiles", i);
    if (!profile_names.insert(p.name).second) {
      diags.Error(path + ".name", "duplicate-declaration",
                  "duplicate profile '" + p.name + "'");
    }
    if (p.stages.empty()) {
      diags.Error(path, "empty-profile", "profile '" + p.name + "' has no objectives");
    }
    for (std::size_t s = 0; s < p.stages.size(); ++s) {
      const std::string spath = Index(path + ".objectives", s);
      if (p.stages[s].cells.empty()) {
        diags.Error(spath, "empty-objective", "attacker objective has no cells");
      }
      std::set<Cell> seen;
      for (std::size_t k = 0; k < p.stages[s].cells.size(); ++k) {
        const auto& cell = p.stages[s].cells[k];
        CheckCell(spec, cell, Index(spath, k), diags);
        if (!seen.insert(cell).second) {
          diags.Error(Index(spath, k), "duplicate-cell",
                      "cell " + cell.key() + " listed twice in one objective");
        }
        targeted.insert(cell);
      }
    }
  }
  for (const auto& cell : cells_with_payoff) {
    if (!targeted.count(cell)) {
      diags.Warn("$.controls", "unreferenced-cell",
                 "cell " + cell.key() + " has payoffs but no profile targets it");
    }
  }

  const std::size_t choices = spec.family.choice_count();
  if (choices > options.expand.max_choices) {
    diags.Warn("$.family", "choice-limit",
               "family has " + std::to_string(choices) + " choices; expansion is limited to " +
                   std::to_string(options.expand.max_choices));
  } else if (!diags.has_errors()) {
    const Family f = Expand(spec.family, spec.requirements, options.expand);
    if (f.empty()) {
      diags.Warn("$.family", "empty-strategy-space",
                 "family and requirements admit no combination");
    } else if (FilterValid(f, spec.cost_table(), Budget(spec.budget)).empty()) {
      diags.Warn("$.budget", "no-valid-strategies", "no combination fits the budget");
    }
  }
  return diags.Take();
}

// ---------------------------------------------------------------------------
// Loading

LoadResult LoadModelText(const std::string& text, bool json) {
  if (json) return ModelFromJsonText(text);
  return ParseModel(text);
}

LoadResult LoadModelFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    LoadResult r;
    r.diagnostics.push_back({Severity::kError, {0, 0, path}, "cannot read file", "io-error"});
    return r;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const bool ext_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool looks_json = first != std::string::npos && text[first] == '{';
  return LoadModelText(text, ext_json || looks_json);
}

}  // namespace ctrlgame
