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

#ifndef CTRLGAME_GAME_H_
#define CTRLGAME_GAME_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ctrlgame/valuation.h"

namespace ctrlgame {

// Cells the attacker is assumed to target with equal weight.
struct AttackerObjective {
  std::vector<Cell> cells;  // non-empty, no duplicates

  friend bool operator==(const AttackerObjective&, const AttackerObjective&) = default;
};

// Attacker objectives in priority order, highest first.
struct AttackerProfile {
  std::string name;
  std::vector<AttackerObjective> stages;

  friend bool operator==(const AttackerProfile&, const AttackerProfile&) = default;
};

struct StageRecord {
  std::size_t index = 0;  // 1-based
  // Rows entering the stage with their total effectiveness, matrix order.
  std::vector<std::pair<std::size_t, double>> candidates;
  std::vector<std::size_t> survivors;
  double best = 0.0;
};

struct PlayResult {
  std::vector<StageRecord> stages;
  std::vector<std::size_t> suggested;  // row indices, matrix order
  std::vector<std::string> trace;
};

// Sum of the row's payoffs over the objective's cells, added in column order.
// Throws ModelError for a cell that is not a column of gm.
double TotalEffectiveness(std::size_t row, const AttackerObjective& ao,
                          const GameMatrix& gm);
double TotalEffectiveness(const Combination& row, const AttackerObjective& ao,
                          const GameMatrix& gm);

// Lexicographic maximization: each stage keeps the surviving rows whose total
// is within kEffectivenessTolerance of the stage maximum.
// Throws NoStrategiesError for an empty matrix, ModelError for a profile that
// has no stages, an empty stage, or a cell outside the matrix.
PlayResult Play(const GameMatrix& gm, const AttackerProfile& profile);

// Cells where the chosen row's payoff is below threshold, ascending by payoff
// (ties in column order). Throws ModelError when chosen is not a row of gm.
std::vector<std::pair<Cell, double>> ResidualRiskReport(const Combination& chosen,
                                                        const GameMatrix& gm,
                                                        double threshold);

}  // namespace ctrlgame

#endif  // CTRLGAME_GAME_H_
