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

#include "ctrlgame/game.h"

#include <algorithm>
#include <limits>
#include <sstream>

#include "ctrlgame/error.h"
#include "ctrlgame/kernels.h"

namespace ctrlgame {

namespace {

std::vector<std::size_t> ColumnsOf(const AttackerObjective& ao, const GameMatrix& gm) {
  std::vector<std::size_t> cols;
  cols.reserve(ao.cells.size());
  for (const auto& cell : ao.cells) {
    auto c = gm.find_column(cell);
    if (!c) throw ModelError("unknown-cell", "cell '" + cell.key() + "' is not in the game matrix");
    cols.push_back(*c);
  }
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  return cols;
}

std::string FormatStage(const StageRecord& stage, const AttackerObjective& ao,
                        const GameMatrix& gm) {
  std::ostringstream out;
  out.precision(12);
  out << "stage " << stage.index << " {";
  for (std::size_t i = 0; i < ao.cells.size(); ++i) {
    out << (i ? ", " : "") << ao.cells[i].key();
  }
  out << "}: " << stage.candidates.size() << " candidate(s), best total " << stage.best
      << ", kept ";
  for (std::size_t i = 0; i < stage.survivors.size(); ++i) {
    out << (i ? ", " : "") << gm.rows()[stage.survivors[i]].id;
  }
  return out.str();
}

}  // namespace

double TotalEffectiveness(std::size_t row, const AttackerObjective& ao,
                          const GameMatrix& gm) {
  double total = 0.0;
  for (std::size_t c : ColumnsOf(ao, gm)) total += gm.at(row, c);
  return total;
}

double TotalEffectiveness(const Combination& row, const AttackerObjective& ao,
                          const GameMatrix& gm) {
  auto r = gm.find_row(row);
  if (!r) throw ModelError("unknown-row", "combination '" + row.to_string() + "' is not a row");
  return TotalEffectiveness(*r, ao, gm);
}

PlayResult Play(const GameMatrix& gm, const AttackerProfile& profile) {
  if (gm.row_count() == 0) {
    throw NoStrategiesError("no valid strategies under the current budget");
  }
  if (profile.stages.empty()) {
    throw ModelError("empty-profile", "profile '" + profile.name + "' has no objectives");
  }
  for (const auto& stage : profile.stages) {
    if (stage.cells.empty()) {
      throw ModelError("empty-objective",
                       "profile '" + profile.name + "' has an empty objective");
    }
  }

  const std::size_t n = gm.row_count();
  std::vector<unsigned char> alive(n, 1);
  std::vector<double> totals(n);
  std::vector<double> masked(n);
  PlayResult result;

  for (std::size_t s = 0; s < profile.stages.size(); ++s) {
    const auto& ao = profile.stages[s];
    std::fill(totals.begin(), totals.end(), 0.0);
    for (std::size_t c : ColumnsOf(ao, gm)) kernels::Accumulate(totals, gm.column(c));

    for (std::size_t i = 0; i < n; ++i) {
      masked[i] = alive[i] ? totals[i] : -std::numeric_limits<double>::infinity();
    }
    StageRecord record;
    record.index = s + 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (alive[i]) record.candidates.emplace_back(i, totals[i]);
    }
    record.best = kernels::MaxValue(masked);
    kernels::MaskAtLeast(alive, masked, record.best - kEffectivenessTolerance);
    for (std::size_t i = 0; i < n; ++i) {
      if (alive[i]) record.survivors.push_back(i);
    }
    result.trace.push_back(FormatStage(record, ao, gm));
    result.stages.push_back(std::move(record));
  }
  result.suggested = result.stages.back().survivors;
  return result;
}

std::vector<std::pair<Cell, double>> ResidualRiskReport(const Combination& chosen,
                                                        const GameMatrix& gm,
                                                        double threshold) {
  auto r = gm.find_row(chosen);
  if (!r) {
    throw ModelError("unknown-row",
                     "combination '" + chosen.to_string() + "' is not a row of the game matrix");
  }
  std::vector<std::pair<Cell, double>> out;
  for (std::size_t c = 0; c < gm.column_count(); ++c) {
    const double v = gm.at(*r, c);
    if (v < threshold) out.emplace_back(gm.columns()[c], v);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

}  // namespace ctrlgame
