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

#include "ctrlgame/algebra.h"

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <variant>

#include "ctrlgame/error.h"

namespace ctrlgame {

bool IsValidToken(std::string_view token) {
  if (token.empty()) return false;
  bool all_digits = true;
  for (char ch : token) {
    const bool digit = ch >= '0' && ch <= '9';
    const bool alpha = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z');
    if (!digit && !alpha && ch != '-' && ch != '_') return false;
    all_digits = all_digits && digit;
  }
  return !all_digits && token.front() != '-';
}

// ---------------------------------------------------------------------------
// Term

struct Term::Node {
  struct Binary {
    Term left;
    Term right;
  };
  Kind kind;
  std::variant<std::monostate, ControlId, Binary> payload;
};

Term Term::Zero() {
  static const Term zero(std::make_shared<const Node>(Node{Kind::kZero, {}}));
  return zero;
}

Term Term::One() {
  static const Term one(std::make_shared<const Node>(Node{Kind::kOne, {}}));
  return one;
}

Term Term::Atom(ControlId id) {
  return Term(std::make_shared<const Node>(Node{Kind::kAtom, std::move(id)}));
}

Term Term::Choice(Term left, Term right) {
  return Term(std::make_shared<const Node>(
      Node{Kind::kChoice, Node::Binary{std::move(left), std::move(right)}}));
}

Term Term::Comp(Term left, Term right) {
  return Term(std::make_shared<const Node>(
      Node{Kind::kComp, Node::Binary{std::move(left), std::move(right)}}));
}

Term::Kind Term::kind() const { return node_->kind; }

const ControlId& Term::atom() const { return std::get<ControlId>(node_->payload); }

const Term& Term::left() const { return std::get<Node::Binary>(node_->payload).left; }

const Term& Term::right() const { return std::get<Node::Binary>(node_->payload).right; }

std::size_t Term::choice_count() const {
  switch (kind()) {
    case Kind::kChoice:
      return 1 + left().choice_count() + right().choice_count();
    case Kind::kComp:
      return left().choice_count() + right().choice_count();
    default:
      return 0;
  }
}

bool Term::contains_zero() const {
  switch (kind()) {
    case Kind::kZero:
      return true;
    case Kind::kChoice:
    case Kind::kComp:
      return left().contains_zero() || right().contains_zero();
    default:
      return false;
  }
}

namespace {

void CollectAtoms(const Term& t, std::set<ControlId>& out) {
  switch (t.kind()) {
    case Term::Kind::kAtom:
      out.insert(t.atom());
      break;
    case Term::Kind::kChoice:
    case Term::Kind::kComp:
      CollectAtoms(t.left(), out);
      CollectAtoms(t.right(), out);
      break;
    default:
      break;
  }
}

}  // namespace

std::set<ControlId> Term::atoms() const {
  std::set<ControlId> out;
  CollectAtoms(*this, out);
  return out;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::kZero:
    case Term::Kind::kOne:
      return true;
    case Term::Kind::kAtom:
      return a.atom() == b.atom();
    default:
      return a.left() == b.left() && a.right() == b.right();
  }
}

// ---------------------------------------------------------------------------
// Combination / Family

Combination::Combination(std::vector<ControlId> atoms) : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

Combination::Combination(std::initializer_list<std::string_view> atoms) {
  atoms_.reserve(atoms.size());
  for (auto a : atoms) atoms_.emplace_back(std::string(a));
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

bool Combination::contains(const ControlId& id) const {
  return std::binary_search(atoms_.begin(), atoms_.end(), id);
}

bool Combination::is_subset_of(const Combination& other) const {
  return std::includes(other.atoms_.begin(), other.atoms_.end(), atoms_.begin(),
                       atoms_.end());
}

Combination Combination::united(const Combination& other) const {
  Combination out;
  out.atoms_.reserve(atoms_.size() + other.atoms_.size());
  std::set_union(atoms_.begin(), atoms_.end(), other.atoms_.begin(),
                 other.atoms_.end(), std::back_inserter(out.atoms_));
  return out;
}

std::string Combination::to_string() const {
  std::string out;
  for (const auto& a : atoms_) {
    if (!out.empty()) out += ' ';
    out += a.str();
  }
  return out;
}

std::strong_ordering operator<=>(const Combination& a, const Combination& b) {
  if (auto c = a.atoms_.size() <=> b.atoms_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.atoms_.begin(), a.atoms_.end(),
                                                b.atoms_.begin(), b.atoms_.end());
}

Family::Family(std::vector<Combination> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool Family::contains(const Combination& c) const {
  return std::binary_search(members_.begin(), members_.end(), c);
}

bool Family::is_subset_of(const Family& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

// ---------------------------------------------------------------------------
// Normalization
//
// Works over bitsets indexed by the term's own atom universe so that the
// exponential part of the expansion never touches strings.

namespace {

using AtomSet = std::vector<std::uint64_t>;

struct Universe {
  std::vector<ControlId> atoms;  // sorted
  std::map<ControlId, std::size_t> index;
  std::size_t words = 1;

  explicit Universe(const std::set<ControlId>& ids) : atoms(ids.begin(), ids.end()) {
    for (std::size_t i = 0; i < atoms.size(); ++i) index.emplace(atoms[i], i);
    words = std::max<std::size_t>(1, (atoms.size() + 63) / 64);
  }

  AtomSet Singleton(const ControlId& id) const {
    AtomSet s(words, 0);
    const std::size_t i = index.at(id);
    s[i / 64] |= std::uint64_t{1} << (i % 64);
    return s;
  }

  Combination ToCombination(const AtomSet& s) const {
    std::vector<ControlId> ids;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (s[i / 64] >> (i % 64) & 1) ids.push_back(atoms[i]);
    }
    return Combination(std::move(ids));
  }
};

void Canonicalize(std::vector<AtomSet>& f) {
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
}

std::vector<AtomSet> NormalizeSets(const Term& t, const Universe& u) {
  switch (t.kind()) {
    case Term::Kind::kZero:
      return {};
    case Term::Kind::kOne:
      return {AtomSet(u.words, 0)};
    case Term::Kind::kAtom:
      return {u.Singleton(t.atom())};
    case Term::Kind::kChoice: {
      auto out = NormalizeSets(t.left(), u);
      auto rhs = NormalizeSets(t.right(), u);
      out.insert(out.end(), std::make_move_iterator(rhs.begin()),
                 std::make_move_iterator(rhs.end()));
      Canonicalize(out);
      return out;
    }
    case Term::Kind::kComp: {
      const auto lhs = NormalizeSets(t.left(), u);
      if (lhs.empty()) return {};
      const auto rhs = NormalizeSets(t.right(), u);
      std::vector<AtomSet> out;
      out.reserve(lhs.size() * rhs.size());
      for (const auto& a : lhs) {
        for (const auto& b : rhs) {
          AtomSet s(u.words);
          for (std::size_t w = 0; w < u.words; ++w) s[w] = a[w] | b[w];
          out.push_back(std::move(s));
        }
      }
      Canonicalize(out);
      return out;
    }
  }
  return {};
}

bool RefinesFamily(const Combination& x, const Family& c) {
  return std::any_of(c.begin(), c.end(),
                     [&](const Combination& q) { return q.is_subset_of(x); });
}

}  // namespace

Family Normalize(const Term& term) {
  const Universe u(term.atoms());
  const auto sets = NormalizeSets(term, u);
  std::vector<Combination> members;
  members.reserve(sets.size());
  for (const auto& s : sets) members.push_back(u.ToCombination(s));
  return Family(std::move(members));
}

Term Opt(std::span<const ControlId> ids) {
  std::set<ControlId> seen;
  Term out = Term::One();
  bool first = true;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) {
      throw SpecificationError("duplicate-id",
                               "duplicate control '" + id.str() + "' in opt[...]");
    }
    Term optional = Term::Choice(Term::Atom(id), Term::One());
    out = first ? optional : Term::Comp(std::move(out), std::move(optional));
    first = false;
  }
  return out;
}

Term Opt(std::initializer_list<std::string_view> ids) {
  std::vector<ControlId> v;
  for (auto id : ids) v.emplace_back(std::string(id));
  return Opt(std::span<const ControlId>(v));
}

bool Refines(const Combination& x, const Term& c) {
  const Family fc = Normalize(c);
  if (fc.empty()) {
    throw SpecificationError("refines-zero",
                             "refinement against a non-implementable family (0)");
  }
  return RefinesFamily(x, fc);
}

void CheckRequirement(const Requirement& r) {
  if (r.antecedent.contains_zero() || r.consequent.contains_zero()) {
    throw SpecificationError("requirement-zero",
                             "requirement terms may not contain 0");
  }
  if (Normalize(r.antecedent).empty() || Normalize(r.consequent).empty()) {
    throw SpecificationError("refines-zero",
                             "requirement term normalizes to the empty family");
  }
}

Family ApplyRequirement(const Family& f, const Requirement& r) {
  const Family antecedent = Normalize(r.antecedent);
  const Family consequent = Normalize(r.consequent);
  if (antecedent.empty() || consequent.empty()) {
    throw SpecificationError("refines-zero",
                             "refinement against a non-implementable family (0)");
  }
  std::vector<Combination> kept;
  for (const auto& x : f) {
    if (!RefinesFamily(x, antecedent) || RefinesFamily(x, consequent)) kept.push_back(x);
  }
  return Family(std::move(kept));
}

Family Expand(const Term& term, std::span<const Requirement> requirements,
              const ExpandOptions& options) {
  if (const auto n = term.choice_count(); n > options.max_choices) {
    throw SpecificationError(
        "choice-limit", "family term has " + std::to_string(n) +
                            " choices; expansion is limited to " +
                            std::to_string(options.max_choices));
  }
  Family f = Normalize(term);
  for (const auto& r : requirements) f = ApplyRequirement(f, r);
  return f;
}

}  // namespace ctrlgame
