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

#ifndef CTRLGAME_VALUATION_H_
#define CTRLGAME_VALUATION_H_

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ctrlgame/algebra.h"

namespace ctrlgame {

// Tolerance for comparing derived effectiveness values (sums and noisy-or
// products). Budgets are compared exactly.
inline constexpr double kEffectivenessTolerance = 1e-9;

// An (asset, security objective) pair: one attacker strategy.
struct Cell {
  std::string asset;
  std::string objective;

  std::string key() const { return asset + "." + objective; }

  friend auto operator<=>(const Cell&, const Cell&) = default;
  friend bool operator==(const Cell&, const Cell&) = default;
};

// Ordered qualitative labels mapped to effectiveness values in [0, 1].
class EffScale {
 public:
  EffScale() = default;
  // Throws ModelError on duplicate labels or values outside [0, 1].
  explicit EffScale(std::vector<std::pair<std::string, double>> labels);

  // None 0.0, Low 0.2, Medium 0.5, High 0.8, VeryHigh 0.9.
  static EffScale Default();

  const std::vector<std::pair<std::string, double>>& labels() const { return labels_; }
  std::optional<double> lookup(const std::string& label) const;

  friend bool operator==(const EffScale&, const EffScale&) = default;

 private:
  std::vector<std::pair<std::string, double>> labels_;
};

// Effectiveness E(control, cell). Entries never stored read as 0.
class AtomicPayoff {
 public:
  // Throws ModelError unless 0 <= value <= 1.
  void set(const ControlId& control, const Cell& cell, double value);
  double get(const ControlId& control, const Cell& cell) const;

  const std::map<std::pair<ControlId, Cell>, double>& entries() const { return entries_; }

 private:
  std::map<std::pair<ControlId, Cell>, double> entries_;
};

// Cost G(control) per atomic control.
class CostTable {
 public:
  // Throws ModelError("negative-cost") for negative or non-finite costs.
  void set(const ControlId& control, double cost);
  // Throws ModelError("unknown-control") for controls without an entry.
  double get(const ControlId& control) const;
  bool contains(const ControlId& control) const { return entries_.count(control) != 0; }

  const std::map<ControlId, double>& entries() const { return entries_; }

 private:
  std::map<ControlId, double> entries_;
};

class Budget {
 public:
  // Throws ModelError("negative-budget") unless finite and >= 0.
  explicit Budget(double value);

  double value() const noexcept { return value_; }

  friend auto operator<=>(const Budget&, const Budget&) = default;

 private:
  double value_;
};

// A combination together with its stable row id ("Combo 3").
struct Strategy {
  std::string id;
  Combination combination;

  friend bool operator==(const Strategy&, const Strategy&) = default;
};

// Ids "Combo 1".."Combo n" in the family's canonical order.
std::vector<Strategy> LabelStrategies(const Family& f);

// Rows are analyst strategies, columns attacker cells. Payoffs are stored
// column-major so that per-cell sums over all rows run contiguously.
class GameMatrix {
 public:
  GameMatrix(std::vector<Strategy> rows, std::vector<Cell> columns,
             std::vector<double> column_major_payoff);

  const std::vector<Strategy>& rows() const { return rows_; }
  const std::vector<Cell>& columns() const { return columns_; }
  std::size_t row_count() const { return rows_.size(); }
  std::size_t column_count() const { return columns_.size(); }

  double at(std::size_t row, std::size_t column) const {
    return payoff_[column * rows_.size() + row];
  }
  std::span<const double> column(std::size_t c) const {
    return {payoff_.data() + c * rows_.size(), rows_.size()};
  }
  std::vector<double> row(std::size_t r) const;

  std::optional<std::size_t> find_column(const Cell& cell) const;
  std::optional<std::size_t> find_row(const std::string& id) const;
  std::optional<std::size_t> find_row(const Combination& combination) const;

 private:
  std::vector<Strategy> rows_;
  std::vector<Cell> columns_;
  std::vector<double> payoff_;
};

// Sum of atom costs; 0 for the empty combination.
double CombinationCost(const Combination& p, const CostTable& g);

// Cost(p) <= B, compared exactly.
bool IsValid(const Combination& p, const CostTable& g, const Budget& b);

Family FilterValid(const Family& f, const CostTable& g, const Budget& b);
std::vector<Strategy> FilterValid(std::span<const Strategy> strategies, const CostTable& g,
                                  const Budget& b);

// Noisy-or: 1 - prod over atoms (1 - E(atom, cell)); 0 for the empty
// combination. Atoms are folded in canonical order.
double CombinationEffectiveness(const Combination& p, const Cell& cell,
                                const AtomicPayoff& e);

// Throws NoStrategiesError for an empty family / strategy list and
// ModelError for an empty column list.
GameMatrix BuildGameMatrix(std::span<const Strategy> strategies,
                           std::span<const Cell> cells, const AtomicPayoff& e);
GameMatrix BuildGameMatrix(const Family& f, std::span<const Cell> cells,
                           const AtomicPayoff& e);

}  // namespace ctrlgame

#endif  // CTRLGAME_VALUATION_H_
