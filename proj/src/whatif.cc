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

#include "ctrlgame/whatif.h"

#include <algorithm>
#include <set>

#include "ctrlgame/dsl.h"
#include "ctrlgame/error.h"

namespace ctrlgame {

std::vector<Strategy> ExpandModel(const ModelSpec& spec, const ExpandOptions& options) {
  return LabelStrategies(Expand(spec.family, spec.requirements, options));
}

GameMatrix BuildModelMatrix(const ModelSpec& spec, std::span<const Strategy> expanded,
                            const Budget& budget) {
  const auto valid = FilterValid(expanded, spec.cost_table(), budget);
  if (valid.empty()) {
    throw NoStrategiesError("no valid strategies under budget " + FormatNumber(budget.value()));
  }
  const auto cells = spec.cells();
  return BuildGameMatrix(std::span<const Strategy>(valid), cells, spec.atomic_payoff());
}

GameMatrix BuildModelMatrix(const ModelSpec& spec, const Budget& budget) {
  const auto expanded = ExpandModel(spec);
  return BuildModelMatrix(spec, expanded, budget);
}

std::vector<std::size_t> SuggestedForDisplay(const PlayResult& result, const GameMatrix& gm,
                                             const CostTable& costs) {
  std::vector<std::size_t> rows = result.suggested;
  std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
    const auto& ca = gm.rows()[a].combination;
    const auto& cb = gm.rows()[b].combination;
    const double cost_a = CombinationCost(ca, costs);
    const double cost_b = CombinationCost(cb, costs);
    if (cost_a != cost_b) return cost_a < cost_b;
    return ca.atoms() < cb.atoms();
  });
  return rows;
}

std::vector<SweepEntry> BudgetSweep(const ModelSpec& spec, std::span<const Budget> budgets,
                                    const AttackerProfile& profile) {
  const auto expanded = ExpandModel(spec);
  std::vector<SweepEntry> out;
  out.reserve(budgets.size());
  for (const auto& b : budgets) {
    SweepEntry entry;
    entry.budget = b;
    try {
      entry.matrix = BuildModelMatrix(spec, expanded, b);
      entry.result = Play(*entry.matrix, profile);
    } catch (const Error& e) {
      entry.error_code = e.code();
      entry.error_message = e.what();
    }
    out.push_back(std::move(entry));
  }
  return out;
}

std::size_t SensitivityReport::unstable_count() const {
  return static_cast<std::size_t>(std::count_if(
      entries.begin(), entries.end(), [](const SensitivityEntry& e) { return !e.stable(); }));
}

namespace {

std::set<Combination> SuggestedSet(const GameMatrix& gm, const PlayResult& r) {
  std::set<Combination> out;
  for (std::size_t i : r.suggested) out.insert(gm.rows()[i].combination);
  return out;
}

}  // namespace

SensitivityReport SensitivityScan(const ModelSpec& spec, const AttackerProfile& profile,
                                  double delta, const SensitivityOptions& options) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw ModelError("invalid-delta", "delta must satisfy 0 < delta <= 1");
  }
  const Budget budget(spec.budget);
  const auto expanded = ExpandModel(spec);
  const auto valid = FilterValid(expanded, spec.cost_table(), budget);
  if (valid.empty()) throw NoStrategiesError("no valid strategies under the model budget");
  const auto cells = spec.cells();
  const AtomicPayoff payoff = spec.atomic_payoff();

  const GameMatrix base = BuildGameMatrix(std::span<const Strategy>(valid), cells, payoff);
  const PlayResult base_result = Play(base, profile);
  const auto baseline = SuggestedSet(base, base_result);

  SensitivityReport report;
  report.delta = delta;
  for (std::size_t i : base_result.suggested) report.baseline.push_back(base.rows()[i]);

  std::vector<std::pair<ControlId, Cell>> targets;
  if (options.include_zero_entries) {
    const auto atoms = spec.family.atoms();
    for (const auto& c : spec.controls) {
      if (!atoms.count(c.id)) continue;
      for (const auto& cell : cells) targets.emplace_back(c.id, cell);
    }
  } else {
    for (const auto& c : spec.controls) {
      for (const auto& p : c.payoff) {
        if (p.eff.value != 0.0) targets.emplace_back(c.id, p.cell);
      }
    }
  }

  auto replay_changes = [&](const ControlId& id, const Cell& cell, double value) {
    AtomicPayoff perturbed = payoff;
    perturbed.set(id, cell, value);
    const GameMatrix gm = BuildGameMatrix(std::span<const Strategy>(valid), cells, perturbed);
    return SuggestedSet(gm, Play(gm, profile)) != baseline;
  };

  for (const auto& [id, cell] : targets) {
    SensitivityEntry e;
    e.control = id;
    e.cell = cell;
    e.original = payoff.get(id, cell);
    e.lowered = std::clamp(e.original - delta, 0.0, 1.0);
    e.raised = std::clamp(e.original + delta, 0.0, 1.0);
    e.changed_when_lowered = e.lowered != e.original && replay_changes(id, cell, e.lowered);
    e.changed_when_raised = e.raised != e.original && replay_changes(id, cell, e.raised);
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace ctrlgame
