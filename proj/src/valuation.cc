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

#include "ctrlgame/valuation.h"

#include <cmath>
#include <set>

#include "ctrlgame/error.h"
#include "ctrlgame/kernels.h"

namespace ctrlgame {

namespace {

bool InUnitInterval(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

EffScale::EffScale(std::vector<std::pair<std::string, double>> labels)
    : labels_(std::move(labels)) {
  std::set<std::string> seen;
  for (const auto& [label, value] : labels_) {
    if (!seen.insert(label).second) {
      throw ModelError("duplicate-declaration", "duplicate scale label '" + label + "'");
    }
    if (!InUnitInterval(value)) {
      throw ModelError("effectiveness-range",
                       "scale label '" + label + "' has effectiveness outside [0,1]");
    }
  }
}

EffScale EffScale::Default() {
  return EffScale({{"None", 0.0},
                   {"Low", 0.2},
                   {"Medium", 0.5},
                   {"High", 0.8},
                   {"VeryHigh", 0.9}});
}

std::optional<double> EffScale::lookup(const std::string& label) const {
  for (const auto& [name, value] : labels_) {
    if (name == label) return value;
  }
  return std::nullopt;
}

void AtomicPayoff::set(const ControlId& control, const Cell& cell, double value) {
  if (!InUnitInterval(value)) {
    throw ModelError("effectiveness-range",
                     "effectiveness outside [0,1] for " + control.str() + " at " +
                         cell.key());
  }
  entries_[{control, cell}] = value;
}

double AtomicPayoff::get(const ControlId& control, const Cell& cell) const {
  auto it = entries_.find({control, cell});
  return it == entries_.end() ? 0.0 : it->second;
}

void CostTable::set(const ControlId& control, double cost) {
  if (!std::isfinite(cost) || cost < 0.0) {
    throw ModelError("negative-cost", "negative cost not supported for control '" +
                                          control.str() + "'");
  }
  entries_[control] = cost;
}

double CostTable::get(const ControlId& control) const {
  auto it = entries_.find(control);
  if (it == entries_.end()) {
    throw ModelError("unknown-control", "no cost for control '" + control.str() + "'");
  }
  return it->second;
}

Budget::Budget(double value) : value_(value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw ModelError("negative-budget", "budget must be a finite non-negative number");
  }
}

std::vector<Strategy> LabelStrategies(const Family& f) {
  std::vector<Strategy> out;
  out.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out.push_back({"Combo " + std::to_string(i + 1), f[i]});
  }
  return out;
}

GameMatrix::GameMatrix(std::vector<Strategy> rows, std::vector<Cell> columns,
                       std::vector<double> column_major_payoff)
    : rows_(std::move(rows)),
      columns_(std::move(columns)),
      payoff_(std::move(column_major_payoff)) {
  if (payoff_.size() != rows_.size() * columns_.size()) {
    throw std::invalid_argument("payoff size does not match rows x columns");
  }
}

std::vector<double> GameMatrix::row(std::size_t r) const {
  std::vector<double> out(columns_.size());
  for (std::size_t c = 0; c < columns_.size(); ++c) out[c] = at(r, c);
  return out;
}

std::optional<std::size_t> GameMatrix::find_column(const Cell& cell) const {
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (columns_[c] == cell) return c;
  }
  return std::nullopt;
}

std::optional<std::size_t> GameMatrix::find_row(const std::string& id) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].id == id) return r;
  }
  return std::nullopt;
}

std::optional<std::size_t> GameMatrix::find_row(const Combination& combination) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].combination == combination) return r;
  }
  return std::nullopt;
}

double CombinationCost(const Combination& p, const CostTable& g) {
  double total = 0.0;
  for (const auto& a : p) total += g.get(a);
  return total;
}

bool IsValid(const Combination& p, const CostTable& g, const Budget& b) {
  return CombinationCost(p, g) <= b.value();
}

Family FilterValid(const Family& f, const CostTable& g, const Budget& b) {
  std::vector<Combination> kept;
  for (const auto& p : f) {
    if (IsValid(p, g, b)) kept.push_back(p);
  }
  return Family(std::move(kept));
}

std::vector<Strategy> FilterValid(std::span<const Strategy> strategies, const CostTable& g,
                                  const Budget& b) {
  std::vector<Strategy> kept;
  for (const auto& s : strategies) {
    if (IsValid(s.combination, g, b)) kept.push_back(s);
  }
  return kept;
}

double CombinationEffectiveness(const Combination& p, const Cell& cell,
                                const AtomicPayoff& e) {
  double survival = 1.0;
  for (const auto& a : p) survival *= (1.0 - e.get(a, cell));
  return 1.0 - survival;
}

GameMatrix BuildGameMatrix(std::span<const Strategy> strategies,
                           std::span<const Cell> cells, const AtomicPayoff& e) {
  if (strategies.empty()) {
    throw NoStrategiesError("no strategies to tabulate: the strategy space is empty");
  }
  if (cells.empty()) throw ModelError("no-cells", "game matrix needs at least one cell");

  const std::size_t rows = strategies.size();
  const std::size_t cols = cells.size();

  // Dense effectiveness row per distinct atom, laid out along the cells.
  std::map<ControlId, std::vector<double>> atom_rows;
  for (const auto& s : strategies) {
    for (const auto& a : s.combination) {
      auto [it, inserted] = atom_rows.try_emplace(a);
      if (!inserted) continue;
      it->second.resize(cols);
      for (std::size_t c = 0; c < cols; ++c) it->second[c] = e.get(a, cells[c]);
    }
  }

  std::vector<double> payoff(rows * cols);
  std::vector<double> survival(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    std::fill(survival.begin(), survival.end(), 1.0);
    for (const auto& a : strategies[r].combination) {
      kernels::ScaleByComplement(survival, atom_rows.at(a));
    }
    kernels::Complement(survival);
    for (std::size_t c = 0; c < cols; ++c) payoff[c * rows + r] = survival[c];
  }
  return GameMatrix(std::vector<Strategy>(strategies.begin(), strategies.end()),
                    std::vector<Cell>(cells.begin(), cells.end()), std::move(payoff));
}

GameMatrix BuildGameMatrix(const Family& f, std::span<const Cell> cells,
                           const AtomicPayoff& e) {
  const auto strategies = LabelStrategies(f);
  return BuildGameMatrix(std::span<const Strategy>(strategies), cells, e);
}

}  // namespace ctrlgame
