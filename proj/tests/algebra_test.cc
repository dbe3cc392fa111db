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

#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ctrlgame/error.h"
#include "testing.h"

namespace ctrlgame {
namespace {

using testing::MaskFamily;

Term A(const char* id) { return Term::Atom(id); }

Family Fam(std::initializer_list<Combination> members) { return Family(members); }

TEST(TokenTest, Validity) {
  EXPECT_TRUE(IsValidToken("SI-10"));
  EXPECT_TRUE(IsValidToken("a_b"));
  EXPECT_TRUE(IsValidToken("2FA"));
  EXPECT_FALSE(IsValidToken(""));
  EXPECT_FALSE(IsValidToken("12"));
  EXPECT_FALSE(IsValidToken("-x"));
  EXPECT_FALSE(IsValidToken("a b"));
  EXPECT_FALSE(IsValidToken("a.b"));
}

TEST(CombinationTest, SortedAndUnique) {
  Combination c{"b", "a", "b"};
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.to_string(), "a b");
  EXPECT_TRUE(c.contains(ControlId("a")));
  EXPECT_TRUE(Combination({"a"}).is_subset_of(c));
  EXPECT_FALSE(c.is_subset_of(Combination{"a"}));
  EXPECT_EQ(Combination{"a"}.united(Combination{"c"}), (Combination{"a", "c"}));
}

TEST(CombinationTest, ShortlexOrder) {
  EXPECT_LT(Combination{}, Combination{"z"});
  EXPECT_LT(Combination{"z"}, (Combination{"a", "b"}));
  EXPECT_LT((Combination{"a", "b"}), (Combination{"a", "c"}));
  Family f{Combination{"a", "c"}, Combination{"b"}, Combination{}, Combination{"b"}};
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0], Combination{});
  EXPECT_EQ(f[1], Combination{"b"});
}

TEST(NormalizeTest, Basics) {
  EXPECT_EQ(Normalize(A("a")), Fam({{"a"}}));
  EXPECT_EQ(Normalize(A("a") + A("a")), Fam({{"a"}}));
  EXPECT_EQ(Normalize(A("a") * A("a")), Fam({{"a"}}));
  EXPECT_TRUE(Normalize(A("a") * Term::Zero()).empty());
  EXPECT_TRUE(Normalize(Term::Zero()).empty());
  EXPECT_EQ(Normalize(Term::One()), Fam({Combination{}}));
}

TEST(NormalizeTest, MandatoryWithOptionals) {
  const Family f = Normalize(A("SI-10") * Opt({"AC-3", "AC-4", "AC-6"}));
  ASSERT_EQ(f.size(), 8u);
  for (const auto& c : f) EXPECT_TRUE(c.contains(ControlId("SI-10")));
  std::set<Combination> rest;
  for (const auto& c : f) {
    std::vector<ControlId> others;
    for (const auto& id : c) {
      if (id.str() != "SI-10") others.push_back(id);
    }
    rest.insert(Combination(others));
  }
  EXPECT_EQ(rest.size(), 8u);
}

TEST(OptTest, Shapes) {
  EXPECT_EQ(Opt(std::initializer_list<std::string_view>{}), Term::One());
  EXPECT_EQ(Opt({"a"}), A("a") + Term::One());
  EXPECT_EQ(Opt({"a", "b"}), (A("a") + Term::One()) * (A("b") + Term::One()));
  EXPECT_EQ(Normalize(Opt({"a"})), Fam({Combination{}, {"a"}}));
  EXPECT_EQ(Normalize(Opt({"AC-3", "AC-4", "AC-6"})).size(), 8u);
}

TEST(OptTest, DuplicateIdRejected) {
  try {
    Opt({"a", "b", "a"});
    FAIL();
  } catch (const SpecificationError& e) {
    EXPECT_EQ(e.code(), "duplicate-id");
  }
}

TEST(RefinesTest, Examples) {
  EXPECT_TRUE(Refines(Combination{"SI-10", "AC-3", "AC-6"}, A("AC-3")));
  EXPECT_FALSE(Refines(Combination{"SI-10"}, A("AC-3")));
  EXPECT_TRUE(Refines(Combination{"a", "b"}, A("a") + A("z")));
  EXPECT_TRUE(Refines(Combination{}, Term::One()));
  EXPECT_FALSE(Refines(Combination{"a"}, A("a") * A("b")));
}

TEST(RefinesTest, ZeroFamilyRejected) {
  try {
    Refines(Combination{"a"}, A("a") * Term::Zero());
    FAIL();
  } catch (const SpecificationError& e) {
    EXPECT_EQ(e.code(), "refines-zero");
  }
}

TEST(RequirementTest, FirebirdDependency) {
  const Family f = Normalize(A("SI-10") * Opt({"AC-3", "AC-4", "AC-6"}));
  const Family kept = ApplyRequirement(f, Requirement{A("AC-3"), A("AC-6")});
  ASSERT_EQ(kept.size(), 6u);
  EXPECT_FALSE(kept.contains(Combination{"SI-10", "AC-3"}));
  EXPECT_FALSE(kept.contains(Combination{"SI-10", "AC-3", "AC-4"}));
  EXPECT_TRUE(kept.contains(Combination{"SI-10", "AC-3", "AC-6"}));
}

TEST(RequirementTest, SmallCases) {
  EXPECT_EQ(ApplyRequirement(Fam({{"a"}, {"a", "b"}}), Requirement{A("a"), A("b")}),
            Fam({{"a", "b"}}));
  const Family f = Fam({{"a"}, {"a", "b"}, {"c"}});
  EXPECT_EQ(ApplyRequirement(f, Requirement{A("z"), A("w")}), f);
}

TEST(RequirementTest, ZeroTermsRejected) {
  try {
    CheckRequirement(Requirement{A("a") * Term::Zero(), A("b")});
    FAIL();
  } catch (const SpecificationError& e) {
    EXPECT_EQ(e.code(), "requirement-zero");
  }
  EXPECT_NO_THROW(CheckRequirement(Requirement{A("a") + A("b"), A("c")}));
}

TEST(ExpandTest, Firebird) {
  const std::vector<Requirement> reqs{{A("AC-3"), A("AC-6")}};
  const Family f = Expand(A("SI-10") * Opt({"AC-3", "AC-4", "AC-6"}), reqs);
  const Family expected = Fam({{"SI-10"},
                               {"SI-10", "AC-4"},
                               {"SI-10", "AC-6"},
                               {"SI-10", "AC-3", "AC-6"},
                               {"SI-10", "AC-4", "AC-6"},
                               {"SI-10", "AC-3", "AC-4", "AC-6"}});
  EXPECT_EQ(f, expected);
  // Canonical order reproduces the Combo 1..6 numbering.
  EXPECT_EQ(f[3], (Combination{"SI-10", "AC-3", "AC-6"}));
  EXPECT_EQ(f[4], (Combination{"SI-10", "AC-4", "AC-6"}));
}

TEST(ExpandTest, OneAndOverConstrained) {
  EXPECT_EQ(Expand(Term::One(), {}), Fam({Combination{}}));
  const std::vector<Requirement> reqs{{A("a"), A("b")}};
  EXPECT_TRUE(Expand(A("a"), reqs).empty());
}

TEST(ExpandTest, ChoiceLimit) {
  std::vector<ControlId> ids;
  for (int i = 0; i < 25; ++i) ids.emplace_back("c" + std::to_string(i));
  const Term t = Opt(ids);
  EXPECT_EQ(t.choice_count(), 25u);
  try {
    Expand(t, {});
    FAIL();
  } catch (const SpecificationError& e) {
    EXPECT_EQ(e.code(), "choice-limit");
  }
  ExpandOptions small{.max_choices = 3};
  EXPECT_THROW(Expand(Opt({"a", "b", "c", "d"}), {}, small), SpecificationError);
  EXPECT_EQ(Expand(Opt({"a", "b", "c"}), {}, small).size(), 8u);
}

TEST(TermTest, Accessors) {
  const Term t = (A("b") + Term::One()) * (A("a") * Term::Zero());
  EXPECT_EQ(t.kind(), Term::Kind::kComp);
  EXPECT_EQ(t.left().kind(), Term::Kind::kChoice);
  EXPECT_EQ(t.left().left().atom(), ControlId("b"));
  EXPECT_TRUE(t.contains_zero());
  EXPECT_EQ(t.choice_count(), 1u);
  EXPECT_EQ(t.atoms(), (std::set<ControlId>{ControlId("a"), ControlId("b")}));
  EXPECT_NE(A("a") + A("b"), A("b") + A("a"));
}

// --- Properties over random terms ------------------------------------------

class RandomTermTest : public ::testing::TestWithParam<int> {};

TEST_P(RandomTermTest, SemiringLaws) {
  std::mt19937_64 rng(1000 + GetParam());
  const auto atoms = testing::AtomPool(6);
  for (int i = 0; i < 50; ++i) {
    const Term t1 = testing::RandomTerm(rng, atoms, 4);
    const Term t2 = testing::RandomTerm(rng, atoms, 4);
    const Term t3 = testing::RandomTerm(rng, atoms, 3);
    EXPECT_EQ(testing::SemiringViolation(t1, t2, t3), "") << PrintTerm(t1);
  }
}

TEST_P(RandomTermTest, NormalizeMatchesSetModel) {
  std::mt19937_64 rng(2000 + GetParam());
  const auto atoms = testing::AtomPool(6);
  for (int i = 0; i < 50; ++i) {
    const Term t = testing::RandomTerm(rng, atoms, 5);
    EXPECT_EQ(testing::ToMasks(Normalize(t), atoms), testing::OracleNormalize(t, atoms))
        << PrintTerm(t);
  }
}

TEST_P(RandomTermTest, RefinesMatchesWitnessSearch) {
  std::mt19937_64 rng(3000 + GetParam());
  const auto atoms = testing::AtomPool(6);
  for (int i = 0; i < 30; ++i) {
    Term c = testing::RandomTerm(rng, atoms, 3);
    const MaskFamily fc = testing::OracleNormalize(c, atoms);
    if (fc.none()) {
      EXPECT_THROW(Refines(Combination{}, c), SpecificationError);
      continue;
    }
    for (std::uint32_t x = 0; x < 64; ++x) {
      std::vector<ControlId> ids;
      for (unsigned b = 0; b < 6; ++b) {
        if (x & (1u << b)) ids.push_back(atoms[b]);
      }
      EXPECT_EQ(Refines(Combination(ids), c), testing::OracleRefines(x, fc))
          << PrintTerm(c) << " x=" << x;
    }
  }
}

TEST_P(RandomTermTest, RequirementLaws) {
  std::mt19937_64 rng(4000 + GetParam());
  const auto atoms = testing::AtomPool(6);
  for (int i = 0; i < 30; ++i) {
    const Family f = Normalize(testing::RandomTerm(rng, atoms, 5));
    const Requirement r{testing::RandomRequirementSide(rng, atoms),
                        testing::RandomRequirementSide(rng, atoms)};
    EXPECT_EQ(testing::RequirementViolation(f, r), "");
  }
}

TEST_P(RandomTermTest, ExpandMatchesBruteForceFilter) {
  std::mt19937_64 rng(5000 + GetParam());
  const auto atoms = testing::AtomPool(6);
  for (int i = 0; i < 30; ++i) {
    const Term t = testing::RandomTerm(rng, atoms, 5);
    std::vector<Requirement> reqs;
    const int n = static_cast<int>(rng() % 4);
    for (int k = 0; k < n; ++k) {
      reqs.push_back({testing::RandomRequirementSide(rng, atoms),
                      testing::RandomRequirementSide(rng, atoms)});
    }
    MaskFamily expected;
    const MaskFamily all = testing::OracleNormalize(t, atoms);
    for (std::uint32_t x = 0; x < 64; ++x) {
      if (!all[x]) continue;
      bool ok = true;
      for (const auto& r : reqs) {
        if (testing::OracleRefines(x, testing::OracleNormalize(r.antecedent, atoms)) &&
            !testing::OracleRefines(x, testing::OracleNormalize(r.consequent, atoms))) {
          ok = false;
        }
      }
      if (ok) expected.set(x);
    }
    const Family got = Expand(t, reqs);
    EXPECT_EQ(testing::ToMasks(got, atoms), expected);

    std::shuffle(reqs.begin(), reqs.end(), rng);
    EXPECT_EQ(Expand(t, reqs), got);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomTermTest, ::testing::Range(0, 4));

}  // namespace
}  // namespace ctrlgame
