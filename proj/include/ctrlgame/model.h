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

#ifndef CTRLGAME_MODEL_H_
#define CTRLGAME_MODEL_H_

#include <optional>
#include <string>
#include <vector>

#include "ctrlgame/algebra.h"
#include "ctrlgame/game.h"
#include "ctrlgame/valuation.h"

namespace ctrlgame {

enum class Severity { kError, kWarning };

// Where a diagnostic points: a DSL position (1-based line/column) or a JSON
// path such as "$.controls[2].cost".
struct Location {
  int line = 0;
  int column = 0;
  std::string path;

  std::string to_string() const;

  friend bool operator==(const Location&, const Location&) = default;
};

struct Diagnostic {
  Severity severity = Severity::kError;
  Location location;
  std::string message;
  std::string code;

  std::string to_string() const;
};

bool HasErrors(const std::vector<Diagnostic>& diagnostics);

// An effectiveness entry as written: either a scale label (value resolved
// through the scale) or a bare number.
struct EffValue {
  double value = 0.0;
  std::optional<std::string> label;

  friend bool operator==(const EffValue&, const EffValue&) = default;
};

struct PayoffEntry {
  Cell cell;
  EffValue eff;

  friend bool operator==(const PayoffEntry&, const PayoffEntry&) = default;
};

struct ControlSpec {
  ControlId id;
  std::string name;
  double cost = 0.0;
  std::vector<PayoffEntry> payoff;

  friend bool operator==(const ControlSpec&, const ControlSpec&) = default;
};

// A complete selection model. Mandatory and optional controls are not flagged
// here: they follow from where an atom sits in the family term.
struct ModelSpec {
  std::string name;
  EffScale scale = EffScale::Default();
  std::vector<std::string> assets;
  std::vector<std::string> objectives;
  std::vector<ControlSpec> controls;
  Term family = Term::One();
  std::vector<Requirement> requirements;
  double budget = 0.0;
  std::vector<AttackerProfile> profiles;

  // Asset-major: every objective of the first asset, then the next asset.
  std::vector<Cell> cells() const;
  CostTable cost_table() const;
  AtomicPayoff atomic_payoff() const;

  const ControlSpec* find_control(const ControlId& id) const;
  const AttackerProfile* find_profile(const std::string& name) const;

  // Atoms in catalog declaration order (unknown atoms last, lexicographic).
  std::vector<ControlId> catalog_order(const Combination& c) const;
  // "SI-10 AC-4 AC-6": catalog order joined by spaces.
  std::string display(const Combination& c) const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

struct ValidateOptions {
  ExpandOptions expand;
};

// Errors for broken invariants and unresolved references; warnings for cells
// with payoffs that no profile targets, controls whose payoffs are all zero,
// controls absent from the family, a family beyond the choice limit and an
// empty strategy space. Locations are JSON paths.
std::vector<Diagnostic> Validate(const ModelSpec& spec, const ValidateOptions& options = {});

// A parse or load outcome: the model is present iff there are no errors.
struct LoadResult {
  std::optional<ModelSpec> model;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return model.has_value(); }
};

// Reads a model file, choosing the JSON reader for a ".json" extension or a
// leading '{', the DSL reader otherwise.
LoadResult LoadModelFile(const std::string& path);
LoadResult LoadModelText(const std::string& text, bool json);

}  // namespace ctrlgame

#endif  // CTRLGAME_MODEL_H_
