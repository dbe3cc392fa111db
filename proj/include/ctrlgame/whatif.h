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

#ifndef CTRLGAME_WHATIF_H_
#define CTRLGAME_WHATIF_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctrlgame/game.h"
#include "ctrlgame/model.h"

namespace ctrlgame {

// The model's family expanded under its requirements, labeled "Combo k" in
// canonical order. Labels are independent of the budget, so a combination
// keeps its id across budgets.
std::vector<Strategy> ExpandModel(const ModelSpec& spec, const ExpandOptions& options = {});

// Game matrix over the strategies of `expanded` that fit the budget, with the
// model's cells as columns. Throws NoStrategiesError when none fit.
GameMatrix BuildModelMatrix(const ModelSpec& spec, std::span<const Strategy> expanded,
                            const Budget& budget);
GameMatrix BuildModelMatrix(const ModelSpec& spec, const Budget& budget);

// Suggested rows ordered for display: ascending cost, then lexicographic atoms.
std::vector<std::size_t> SuggestedForDisplay(const PlayResult& result, const GameMatrix& gm,
                                             const CostTable& costs);

struct SweepEntry {
  Budget budget{0.0};
  std::optional<GameMatrix> matrix;
  std::optional<PlayResult> result;
  // Set instead of result when this budget could not be played.
  std::string error_code;
  std::string error_message;
};

// Plays the profile once per budget, in input order. Per-budget failures
// (typically "no-strategies") are recorded in the entry.
std::vector<SweepEntry> BudgetSweep(const ModelSpec& spec, std::span<const Budget> budgets,
                                    const AttackerProfile& profile);

struct SensitivityEntry {
  ControlId control;
  Cell cell;
  double original = 0.0;
  double lowered = 0.0;  // clamped to [0, 1]
  double raised = 0.0;   // clamped to [0, 1]
  bool changed_when_lowered = false;
  bool changed_when_raised = false;

  bool stable() const { return !changed_when_lowered && !changed_when_raised; }
};

struct SensitivityReport {
  double delta = 0.0;
  std::vector<Strategy> baseline;  // suggested at the unperturbed payoffs
  std::vector<SensitivityEntry> entries;

  std::size_t unstable_count() const;
};

struct SensitivityOptions {
  // Also perturb (control, cell) pairs whose effectiveness is 0, for every
  // control of the family and every cell of the model.
  bool include_zero_entries = false;
};

// One-at-a-time perturbation of each non-zero atomic effectiveness by -delta
// and +delta at the model's budget; an entry is unstable when either replay
// suggests a different set of combinations. Throws ModelError unless
// 0 < delta <= 1, NoStrategiesError when nothing fits the budget.
SensitivityReport SensitivityScan(const ModelSpec& spec, const AttackerProfile& profile,
                                  double delta, const SensitivityOptions& options = {});

}  // namespace ctrlgame

#endif  // CTRLGAME_WHATIF_H_
