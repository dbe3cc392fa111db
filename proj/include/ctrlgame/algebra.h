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

#ifndef CTRLGAME_ALGEBRA_H_
#define CTRLGAME_ALGEBRA_H_

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ctrlgame {

// True for a non-empty run of letters, digits, '-' and '_' that is not purely
// numeric (pure numbers are reserved for the 0 and 1 terms and literals).
bool IsValidToken(std::string_view token);

// Identifier of an atomic control, compared case-sensitively.
class ControlId {
 public:
  ControlId() = default;
  explicit ControlId(std::string id) : id_(std::move(id)) {}

  const std::string& str() const noexcept { return id_; }

  friend auto operator<=>(const ControlId&, const ControlId&) = default;
  friend bool operator==(const ControlId&, const ControlId&) = default;

 private:
  std::string id_;
};

// Immutable term of the security control algebra. Copies share structure.
class Term {
 public:
  enum class Kind { kZero, kOne, kAtom, kChoice, kComp };

  static Term Zero();
  static Term One();
  static Term Atom(ControlId id);
  static Term Atom(std::string id) { return Atom(ControlId(std::move(id))); }
  static Term Choice(Term left, Term right);
  static Term Comp(Term left, Term right);

  Kind kind() const;
  // Only valid for kAtom.
  const ControlId& atom() const;
  // Only valid for kChoice and kComp.
  const Term& left() const;
  const Term& right() const;

  // Number of Choice nodes; bounds the size of the normalized family.
  std::size_t choice_count() const;
  bool contains_zero() const;
  std::set<ControlId> atoms() const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// a + b is choice, a * b is mandatory composition.
inline Term operator+(Term a, Term b) { return Term::Choice(std::move(a), std::move(b)); }
inline Term operator*(Term a, Term b) { return Term::Comp(std::move(a), std::move(b)); }

// A set of atomic controls; the empty combination is the element 1.
class Combination {
 public:
  Combination() = default;
  explicit Combination(std::vector<ControlId> atoms);
  Combination(std::initializer_list<std::string_view> atoms);

  const std::vector<ControlId>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }
  auto begin() const noexcept { return atoms_.begin(); }
  auto end() const noexcept { return atoms_.end(); }

  bool contains(const ControlId& id) const;
  bool is_subset_of(const Combination& other) const;
  Combination united(const Combination& other) const;

  // Atoms joined by single spaces, lexicographic.
  std::string to_string() const;

  friend bool operator==(const Combination&, const Combination&) = default;
  // Shortlex: fewer atoms first, then lexicographic by sorted atoms.
  friend std::strong_ordering operator<=>(const Combination& a, const Combination& b);

 private:
  std::vector<ControlId> atoms_;  // sorted, unique
};

// A finite set of combinations in canonical (shortlex) order. The empty
// family is the element 0.
class Family {
 public:
  Family() = default;
  explicit Family(std::vector<Combination> members);
  Family(std::initializer_list<Combination> members)
      : Family(std::vector<Combination>(members)) {}

  const std::vector<Combination>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  const Combination& operator[](std::size_t i) const { return members_[i]; }

  bool contains(const Combination& c) const;
  bool is_subset_of(const Family& other) const;

  friend bool operator==(const Family&, const Family&) = default;

 private:
  std::vector<Combination> members_;
};

// "antecedent requires consequent": any combination refining the antecedent
// must also refine the consequent.
struct Requirement {
  Term antecedent;
  Term consequent;

  friend bool operator==(const Requirement&, const Requirement&) = default;
};

struct ExpandOptions {
  std::size_t max_choices = 24;
};

// Interprets a term in the set-of-sets model: 0 -> {}, 1 -> {{}},
// a -> {{a}}, choice -> union, composition -> pairwise union.
Family Normalize(const Term& term);

// (a + 1) * (b + 1) * ... as a left-leaning chain; One for an empty list.
// Throws SpecificationError on duplicate ids.
Term Opt(std::span<const ControlId> ids);
Term Opt(std::initializer_list<std::string_view> ids);

// True iff some member of Normalize(c) is a subset of x. Throws
// SpecificationError when c normalizes to the empty family.
bool Refines(const Combination& x, const Term& c);

// Throws SpecificationError unless both sides are free of 0 and normalize to
// non-empty families.
void CheckRequirement(const Requirement& r);

// Members of f that satisfy the requirement; always a subset of f.
Family ApplyRequirement(const Family& f, const Requirement& r);

// Normalize(term) filtered by every requirement in turn. Throws
// SpecificationError when the term exceeds options.max_choices. An empty
// result is legal and means the specification is over-constrained.
Family Expand(const Term& term, std::span<const Requirement> requirements,
              const ExpandOptions& options = {});

}  // namespace ctrlgame

#endif  // CTRLGAME_ALGEBRA_H_
