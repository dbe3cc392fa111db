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
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "ctrlgame/error.h"
#include "ctrlgame/whatif.h"
#include "testing.h"

namespace ctrlgame {
namespace {

using testing::C;

std::vector<std::string> Ids(const GameMatrix& gm, const std::vector<std::size_t>& rows) {
  std::vector<std::string> out;
  for (auto r : rows) out.push_back(gm.rows()[r].id);
  return out;
}

std::set<Combination> Combos(const GameMatrix& gm, const std::vector<std::size_t>& rows) {
  std::set<Combination> out;
  for (auto r : rows) out.insert(gm.rows()[r].combination);
  return out;
}

class FirebirdGameTest : public ::testing::Test {
 protected:
  void SetUp() override {
    model_ = testing::LoadFirebird();
    gm_.emplace(BuildModelMatrix(model_, Budget(model_.budget)));
  }
  PlayResult PlayScenario(const std::string& name) {
    return Play(*gm_, *model_.find_profile(name));
  }

  ModelSpec model_;
  std::optional<GameMatrix> gm_;
};

TEST_F(FirebirdGameTest, Scenario1) {
  const PlayResult r = PlayScenario("scenario1");
  EXPECT_EQ(Ids(*gm_, r.suggested), std::vector<std::string>{"Combo 5"});
  ASSERT_EQ(r.stages.size(), 1u);
  EXPECT_NEAR(r.stages[0].best, 1.825, 1e-9);
  EXPECT_EQ(r.stages[0].candidates.size(), 5u);
  EXPECT_NEAR(r.stages[0].candidates[0].second, 1.0, 1e-9);
}

TEST_F(FirebirdGameTest, Scenario2) {
  const PlayResult r = PlayScenario("scenario2");
  EXPECT_EQ(Ids(*gm_, r.suggested), std::vector<std::string>{"Combo 5"});
  EXPECT_NEAR(r.stages[0].best, 3.647, 1e-9);
  EXPECT_NEAR(r.stages[0].candidates[3].second, 3.643, 1e-9);
}

TEST_F(FirebirdGameTest, Scenario3) {
  const PlayResult r = PlayScenario("scenario3");
  ASSERT_EQ(r.stages.size(), 2u);
  EXPECT_EQ(Ids(*gm_, r.stages[0].survivors), (std::vector<std::string>{"Combo 4", "Combo 5"}));
  EXPECT_NEAR(r.stages[0].best, 0.875, 1e-9);
  EXPECT_EQ(r.stages[1].candidates.size(), 2u);
  EXPECT_EQ(Ids(*gm_, r.suggested), std::vector<std::string>{"Combo 4"});
  EXPECT_NEAR(r.stages[1].best, 0.968, 1e-9);
  EXPECT_EQ(r.trace.size(), 2u);
}

TEST_F(FirebirdGameTest, Scenario4) {
  const PlayResult r = PlayScenario("scenario4");
  EXPECT_EQ(Ids(*gm_, r.stages[0].survivors), (std::vector<std::string>{"Combo 2", "Combo 5"}));
  EXPECT_NEAR(r.stages[0].best, 0.95, 1e-9);
  EXPECT_EQ(Ids(*gm_, r.suggested), std::vector<std::string>{"Combo 5"});
  EXPECT_NEAR(r.stages[1].best, 1.822, 1e-9);
  EXPECT_NEAR(r.stages[1].candidates[0].second, 1.59, 1e-9);
}

TEST_F(FirebirdGameTest, TotalEffectiveness) {
  const AttackerObjective ao{{C("database", "C"), C("user_interface", "C")}};
  EXPECT_NEAR(TotalEffectiveness(2, ao, *gm_), 1.65, 1e-9);
  EXPECT_NEAR(TotalEffectiveness(Combination{"SI-10", "AC-3", "AC-6"}, ao, *gm_), 1.775, 1e-9);
  EXPECT_THROW(TotalEffectiveness(0, AttackerObjective{{C("database", "Z")}}, *gm_),
               ModelError);
}

TEST_F(FirebirdGameTest, ResidualRisk) {
  const Combination combo5{"SI-10", "AC-4", "AC-6"};
  const auto report = ResidualRiskReport(combo5, *gm_, 0.9);
  ASSERT_EQ(report.size(), 4u);
  EXPECT_EQ(report[0], std::make_pair(C("database", "A"), 0.0));
  EXPECT_EQ(report[1], std::make_pair(C("user_interface", "A"), 0.0));
  EXPECT_EQ(report[2].first, C("user_interface", "I"));
  EXPECT_NEAR(report[2].second, 0.872, 1e-12);
  EXPECT_EQ(report[3].first, C("user_interface", "C"));
  EXPECT_NEAR(report[3].second, 0.875, 1e-12);
  EXPECT_TRUE(ResidualRiskReport(combo5, *gm_, 0.0).empty());
  EXPECT_EQ(ResidualRiskReport(combo5, *gm_, 1.0).size(), 6u);
  EXPECT_THROW(ResidualRiskReport(Combination{"SI-10", "AC-3", "AC-4", "AC-6"}, *gm_, 0.5),
               ModelError);
}

TEST_F(FirebirdGameTest, Errors) {
  try {
    Play(*gm_, AttackerProfile{"p", {}});
    FAIL();
  } catch (const ModelError& e) {
    EXPECT_EQ(e.code(), "empty-profile");
  }
  try {
    Play(*gm_, AttackerProfile{"p", {AttackerObjective{}}});
    FAIL();
  } catch (const ModelError& e) {
    EXPECT_EQ(e.code(), "empty-objective");
  }
  try {
    Play(*gm_, AttackerProfile{"p", {AttackerObjective{{C("nowhere", "C")}}}});
    FAIL();
  } catch (const ModelError& e) {
    EXPECT_EQ(e.code(), "unknown-cell");
  }
}

TEST(PlayTest, SingleRow) {
  AtomicPayoff e;
  e.set(ControlId("a"), C("x", "C"), 0.3);
  const std::vector<Cell> cells{C("x", "C"), C("x", "I")};
  const GameMatrix gm = BuildGameMatrix(Family{Combination{"a"}}, cells, e);
  const PlayResult r =
      Play(gm, AttackerProfile{"p", {AttackerObjective{{C("x", "I")}}, AttackerObjective{{C("x", "C")}}}});
  EXPECT_EQ(r.suggested, std::vector<std::size_t>{0});
}

TEST(PlayTest, TiesWithinToleranceAreKept) {
  AtomicPayoff e;
  e.set(ControlId("a"), C("x", "C"), 0.1);
  e.set(ControlId("a"), C("x", "I"), 0.2);
  e.set(ControlId("b"), C("x", "C"), 0.3);
  const std::vector<Cell> cells{C("x", "C"), C("x", "I")};
  const GameMatrix gm = BuildGameMatrix(Family{Combination{"a"}, Combination{"b"}}, cells, e);
  // 0.1 + 0.2 differs from 0.3 in the last bit.
  const PlayResult r = Play(gm, AttackerProfile{"p", {AttackerObjective{cells}}});
  EXPECT_EQ(r.suggested.size(), 2u);
}

// --- Properties over random models -----------------------------------------

struct Playable {
  ModelSpec model;
  GameMatrix gm;
};

std::vector<Playable> PlayableModels(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<Playable> out;
  while (static_cast<int>(out.size()) < count) {
    ModelSpec m = testing::RandomModel(rng);
    try {
      GameMatrix gm = BuildModelMatrix(m, Budget(m.budget));
      out.push_back({std::move(m), std::move(gm)});
    } catch (const NoStrategiesError&) {
    }
  }
  return out;
}

TEST(PlayPropertyTest, MatchesLexicographicOracle) {
  for (const auto& [m, gm] : PlayableModels(21, 100)) {
    const Family f = Expand(m.family, m.requirements);
    const auto candidates = testing::OracleValid(f, m);
    ASSERT_EQ(candidates.size(), gm.row_count());
    for (const auto& profile : m.profiles) {
      const PlayResult r = Play(gm, profile);
      EXPECT_EQ(Combos(gm, r.suggested),
                testing::OraclePlay(candidates, profile, m.atomic_payoff()))
          << PrintModel(m);
    }
  }
}

TEST(PlayPropertyTest, SurvivorsNestAndSuggestionNonEmpty) {
  for (const auto& [m, gm] : PlayableModels(22, 50)) {
    for (const auto& profile : m.profiles) {
      const PlayResult r = Play(gm, profile);
      ASSERT_FALSE(r.suggested.empty());
      std::set<std::size_t> previous;
      for (std::size_t i = 0; i < gm.row_count(); ++i) previous.insert(i);
      for (const auto& stage : r.stages) {
        const std::set<std::size_t> now(stage.survivors.begin(), stage.survivors.end());
        EXPECT_TRUE(std::includes(previous.begin(), previous.end(), now.begin(), now.end()));
        previous = now;
      }
      EXPECT_EQ(std::set<std::size_t>(r.suggested.begin(), r.suggested.end()), previous);
    }
  }
}

TEST(PlayPropertyTest, InvariantUnderRowPermutationAndStageDuplication) {
  std::mt19937_64 rng(23);
  for (const auto& [m, gm] : PlayableModels(24, 50)) {
    std::vector<Strategy> rows = gm.rows();
    std::shuffle(rows.begin(), rows.end(), rng);
    const GameMatrix shuffled = BuildGameMatrix(rows, gm.columns(), m.atomic_payoff());
    for (const auto& profile : m.profiles) {
      const auto expected = Combos(gm, Play(gm, profile).suggested);
      EXPECT_EQ(Combos(shuffled, Play(shuffled, profile).suggested), expected);

      AttackerProfile doubled = profile;
      const std::size_t k = rng() % profile.stages.size();
      doubled.stages.insert(doubled.stages.begin() + static_cast<long>(k) + 1,
                            profile.stages[k]);
      EXPECT_EQ(Combos(gm, Play(gm, doubled).suggested), expected);
    }
  }
}

TEST(PlayPropertyTest, AppendingAStageNeverEnlargesSuggestion) {
  std::mt19937_64 rng(25);
  for (const auto& [m, gm] : PlayableModels(26, 50)) {
    for (const auto& profile : m.profiles) {
      const auto before = Combos(gm, Play(gm, profile).suggested);
      AttackerProfile longer = profile;
      std::vector<Cell> cells = gm.columns();
      std::shuffle(cells.begin(), cells.end(), rng);
      cells.resize(1 + rng() % cells.size());
      longer.stages.push_back(AttackerObjective{cells});
      const auto after = Combos(gm, Play(gm, longer).suggested);
      EXPECT_TRUE(std::includes(before.begin(), before.end(), after.begin(), after.end()));
      EXPECT_FALSE(after.empty());
    }
  }
}

}  // namespace
}  // namespace ctrlgame
