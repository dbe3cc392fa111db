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


#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ctrlgame/dsl.h"
#include "ctrlgame/json_io.h"
#include "ctrlgame/model.h"
#include "testing.h"

namespace ctrlgame {
namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string Firebird() { return ReadFile(testing::DataPath("firebird.scm")); }

std::string Replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  if (pos == std::string::npos) throw std::runtime_error("pattern not found: " + from);
  return s.replace(pos, from.size(), to);
}

const Diagnostic* FindError(const LoadResult& r, const std::string& code) {
  for (const auto& d : r.diagnostics) {
    if (d.severity == Severity::kError && d.code == code) return &d;
  }
  return nullptr;
}

TEST(ParseModelTest, Firebird) {
  const LoadResult r = ParseModel(Firebird());
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r.diagnostics.empty());
  const ModelSpec& m = *r.model;
  EXPECT_EQ(m.name, "Firebird");
  EXPECT_EQ(m.controls.size(), 4u);
  EXPECT_EQ(m.assets.size(), 2u);
  EXPECT_EQ(m.objectives.size(), 3u);
  EXPECT_EQ(m.budget, 15.0);
  EXPECT_EQ(m.profiles.size(), 4u);
  EXPECT_EQ(m.family, Term::Atom("SI-10") * Opt({"AC-3", "AC-4", "AC-6"}));
  ASSERT_EQ(m.requirements.size(), 1u);
  EXPECT_EQ(m.requirements[0].antecedent, Term::Atom("AC-3"));
  EXPECT_EQ(m.controls[0].payoff[1].eff, (EffValue{0.9, "VeryHigh"}));
  EXPECT_TRUE(Validate(m).empty());
}

TEST(ParseModelTest, EmptyInput) {
  const LoadResult r = ParseModel("");
  ASSERT_FALSE(r.ok());
  const Diagnostic* d = FindError(r, "missing-model-header");
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(d->message, "missing model header");
  EXPECT_EQ(d->location.line, 1);
}

TEST(ParseModelTest, NegativeCost) {
  const LoadResult r = ParseModel(Replace(Firebird(), "cost 5", "cost -3"));
  ASSERT_FALSE(r.ok());
  const Diagnostic* d = FindError(r, "negative-cost");
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(d->message, "negative cost not supported");
  EXPECT_EQ(d->location.line, 8);
}

TEST(ParseModelTest, EffectivenessOutOfRange) {
  const LoadResult r = ParseModel(Replace(Firebird(), "I = VeryHigh", "I = 1.2"));
  const Diagnostic* d = FindError(r, "effectiveness-range");
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(d->message, "effectiveness outside [0,1]");
  EXPECT_GT(d->location.column, 0);
}

TEST(ParseModelTest, UnknownAssetInProfile) {
  const LoadResult r =
      ParseModel(Replace(Firebird(), "objective { database.I }", "objective { dbase.I }"));
  const Diagnostic* d = FindError(r, "unknown-asset");
  ASSERT_NE(d, nullptr);
  EXPECT_NE(d->message.find("unknown asset"), std::string::npos);
  EXPECT_GT(d->location.line, 0);
}

TEST(ParseModelTest, OtherErrors) {
  struct Case {
    std::string from, to, code;
  };
  const std::vector<Case> cases{
      {"I = VeryHigh", "I = Huge", "unknown-label"},
      {"family = SI-10", "family = XX-1", "unknown-control"},
      {"require AC-3 -> AC-6", "require AC-3 -> (AC-6 . 0)", "requirement-zero"},
      {"budget 15", "budget -1", "negative-budget"},
      {"control AC-3", "control AC-4", "duplicate-declaration"},
      {"objective { user_interface.C }", "objective { user_interface.C, user_interface.C }",
       "duplicate-cell"},
      {"opt[AC-3, AC-4, AC-6]", "opt[AC-3, AC-4, AC-3]", "duplicate-id"},
      {"family =", "family", "syntax"},
      {"\"Firebird\"", "\"Firebird", "syntax"},
  };
  for (const auto& c : cases) {
    const LoadResult r = ParseModel(Replace(Firebird(), c.from, c.to));
    EXPECT_FALSE(r.ok()) << c.code;
    const Diagnostic* d = FindError(r, c.code);
    ASSERT_NE(d, nullptr) << c.code;
    EXPECT_GT(d->location.line, 0) << c.code;
  }
}

TEST(ParseModelTest, EveryFailureIsLocated) {
  std::mt19937_64 rng(41);
  const std::string src = Firebird();
  for (int i = 0; i < 200; ++i) {
    std::string broken = src;
    const std::size_t pos = rng() % broken.size();
    broken.erase(pos, 1 + rng() % 6);
    const LoadResult r = ParseModel(broken);
    if (r.ok()) continue;
    ASSERT_FALSE(r.diagnostics.empty());
    for (const auto& d : r.diagnostics) {
      EXPECT_TRUE(d.location.line > 0 || !d.location.path.empty()) << d.to_string();
      EXPECT_FALSE(d.code.empty());
    }
  }
}

TEST(ParseModelTest, Deterministic) {
  const std::string src = Replace(Firebird(), "cost 5", "cost -3");
  const LoadResult a = ParseModel(src);
  const LoadResult b = ParseModel(src);
  ASSERT_EQ(a.diagnostics.size(), b.diagnostics.size());
  for (std::size_t i = 0; i < a.diagnostics.size(); ++i) {
    EXPECT_EQ(a.diagnostics[i].to_string(), b.diagnostics[i].to_string());
  }
}

TEST(ParseModelTest, CommentsAndCustomScale) {
  const std::string src = R"(# header
model "s"  # trailing
scale { Lo = 0.1 Hi = 0.7 }
assets { db }
objectives { C }
control 2FA "second factor" cost 1.5 { db: C = Hi }
control b "b" cost 0 { db: C = 0.25 }
family = 2FA . (b + 1)
budget 1.5
profile "p" { objective { db.C } }
)";
  const LoadResult r = ParseModel(src);
  ASSERT_TRUE(r.ok()) << (r.diagnostics.empty() ? "" : r.diagnostics[0].to_string());
  EXPECT_EQ(r.model->scale.lookup("Hi"), 0.7);
  EXPECT_EQ(r.model->controls[0].id, ControlId("2FA"));
  EXPECT_EQ(r.model->controls[0].cost, 1.5);
  EXPECT_EQ(PrintTerm(r.model->family), "2FA . opt[b]");
  EXPECT_EQ(ParseModel(PrintModel(*r.model)).model, r.model);
}

TEST(ValidateTest, Warnings) {
  ModelSpec m = testing::LoadFirebird();
  m.profiles = {m.profiles[0]};
  m.controls.push_back(ControlSpec{ControlId("XX-1"), "unused", 1, {}});
  const auto diags = Validate(m);
  EXPECT_FALSE(HasErrors(diags));
  std::set<std::string> codes;
  for (const auto& d : diags) {
    EXPECT_EQ(d.severity, Severity::kWarning);
    EXPECT_FALSE(d.location.path.empty());
    codes.insert(d.code);
  }
  EXPECT_TRUE(codes.count("unreferenced-cell"));
  EXPECT_TRUE(codes.count("unused-control"));
  EXPECT_TRUE(codes.count("zero-payoff-control"));
}

TEST(ValidateTest, ChoiceLimitAndEmptySpace) {
  ModelSpec m = testing::LoadFirebird();
  ValidateOptions o;
  o.expand.max_choices = 2;
  bool warned = false;
  for (const auto& d : Validate(m, o)) warned = warned || d.code == "choice-limit";
  EXPECT_TRUE(warned);

  m.requirements.push_back({Term::Atom("SI-10"), Term::Atom("AC-3") * Term::Atom("AC-4")});
  m.budget = 14;
  bool empty = false;
  for (const auto& d : Validate(m)) empty = empty || d.code == "no-valid-strategies";
  EXPECT_TRUE(empty);
}

TEST(ValidateTest, BrokenInvariants) {
  ModelSpec m = testing::LoadFirebird();
  m.profiles[3].stages[0].cells[0].asset = "nowhere";
  m.controls[1].payoff[0].eff = EffValue{0.3, "Medium"};
  m.budget = -1;
  std::set<std::string> codes;
  for (const auto& d : Validate(m)) {
    if (d.severity == Severity::kError) codes.insert(d.code);
  }
  EXPECT_EQ(codes, (std::set<std::string>{"unknown-asset", "label-mismatch", "negative-budget"}));
}

TEST(TermSyntaxTest, PrintAndParse) {
  EXPECT_EQ(PrintTerm(ParseTerm("a + b . c")), "a + b . c");
  EXPECT_EQ(ParseTerm("a + b . c"), Term::Atom("a") + Term::Atom("b") * Term::Atom("c"));
  EXPECT_EQ(PrintTerm(ParseTerm("(a + b) . c")), "(a + b) . c");
  EXPECT_EQ(PrintTerm(ParseTerm("a + (b + c)")), "a + (b + c)");
  EXPECT_EQ(PrintTerm(ParseTerm("a . (b . c)")), "a . (b . c)");
  EXPECT_EQ(PrintTerm(ParseTerm("(a + 1) . (b + 1)")), "opt[a, b]");
  EXPECT_EQ(PrintTerm(ParseTerm("opt[a, a-b]")), "opt[a, a-b]");
  EXPECT_EQ(PrintTerm(ParseTerm("(a+1).(a+1)")), "opt[a] . opt[a]");
  EXPECT_EQ(PrintTermAtom(ParseTerm("a + 0")), "(a + 0)");
  EXPECT_EQ(PrintTermAtom(ParseTerm("1")), "1");
  try {
    ParseTerm("a + ");
    FAIL();
  } catch (const TermSyntaxError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 5);
  }
  EXPECT_THROW(ParseTerm("a b"), TermSyntaxError);
  EXPECT_THROW(ParseTerm("opt[]"), TermSyntaxError);
}

TEST(FormatNumberTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatNumber(0), "0");
  EXPECT_EQ(FormatNumber(15), "15");
  EXPECT_EQ(FormatNumber(0.875), "0.875");
  EXPECT_EQ(FormatNumber(0.1 + 0.2), "0.30000000000000004");
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int i = 0; i < 1000; ++i) {
    const double v = unit(rng);
    EXPECT_EQ(std::stod(FormatNumber(v)), v);
  }
}

TEST(JsonTest, FirebirdDocument) {
  const ModelSpec m = testing::LoadFirebird();
  const nlohmann::json doc = ModelToJson(m);
  EXPECT_EQ(doc["schema_version"], kSchemaVersion);
  EXPECT_EQ(doc["family"], "SI-10 . opt[AC-3, AC-4, AC-6]");
  EXPECT_EQ(doc["budget"], 15.0);
  EXPECT_EQ(doc["controls"][0]["payoff"][0]["label"], "Medium");
  EXPECT_FALSE(doc["controls"][0]["payoff"][0].contains("value"));
  EXPECT_EQ(doc["profiles"][2]["objectives"][1][0], "user_interface.I");
  const LoadResult r = ModelFromJson(doc);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(*r.model, m);
  EXPECT_EQ(ModelToJson(*r.model).dump(), doc.dump());
}

TEST(JsonTest, BundledJsonMatchesDsl) {
  const LoadResult r = LoadModelFile(testing::DataPath("firebird.json"));
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(*r.model, testing::LoadFirebird());
}

TEST(JsonTest, SchemaErrors) {
  const nlohmann::json base = ModelToJson(testing::LoadFirebird());
  struct Case {
    std::string pointer;
    nlohmann::json value;
    std::string code, message_part, path;
  };
  const std::vector<Case> cases{
      {"/colour", 1, "unknown-key", "colour", "$.colour"},
      {"/budget", "15", "type", "expected number", "$.budget"},
      {"/schema_version", 2, "schema-version", "", "$.schema_version"},
      {"/controls/1/cost", -3, "negative-cost", "negative cost", "$.controls[1].cost"},
      {"/family", "SI-10 +", "syntax", "", "$.family"},
      {"/controls/0/payoff/0/value", 0.5, "payoff-entry", "", "$.controls[0].payoff[0]"},
      {"/assets", "database", "type", "expected array", "$.assets"},
  };
  for (const auto& c : cases) {
    nlohmann::json doc = base;
    doc[nlohmann::json::json_pointer(c.pointer)] = c.value;
    const LoadResult r = ModelFromJson(doc);
    ASSERT_FALSE(r.ok()) << c.pointer;
    const Diagnostic* d = FindError(r, c.code);
    ASSERT_NE(d, nullptr) << c.pointer << ": " << r.diagnostics[0].to_string();
    EXPECT_NE(d->message.find(c.message_part), std::string::npos) << d->message;
    EXPECT_EQ(d->location.path.rfind(c.path, 0), 0u) << d->location.path;
  }
  nlohmann::json missing = base;
  missing.erase("budget");
  EXPECT_NE(FindError(ModelFromJson(missing), "missing-key"), nullptr);
  EXPECT_NE(FindError(ModelFromJsonText("{\"name\": "), "syntax"), nullptr);
}

TEST(JsonTest, NumbersKeepFullPrecision) {
  ModelSpec m = testing::LoadFirebird();
  m.controls[0].cost = 0.1 + 0.2;
  m.controls[0].payoff[0].eff = EffValue{1.0 / 3.0, {}};
  const std::string text = ModelToJson(m).dump();
  EXPECT_NE(text.find("0.30000000000000004"), std::string::npos);
  EXPECT_NE(text.find("0.3333333333333333"), std::string::npos);
  const LoadResult r = ModelFromJsonText(text);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(*r.model, m);
}

class RoundTripTest : public ::testing::TestWithParam<bool> {};

TEST_P(RoundTripTest, RandomModels) {
  std::mt19937_64 rng(GetParam() ? 51 : 52);
  testing::RandomModelOptions o;
  o.grid_values = GetParam();
  for (int i = 0; i < 50; ++i) {
    const ModelSpec m = testing::RandomModel(rng, o);
    ASSERT_FALSE(HasErrors(Validate(m)));
    const std::string text = PrintModel(m);
    const LoadResult dsl = ParseModel(text);
    ASSERT_TRUE(dsl.ok()) << text << dsl.diagnostics[0].to_string();
    EXPECT_EQ(*dsl.model, m) << text;
    EXPECT_EQ(PrintModel(*dsl.model), text);

    const std::string json = ModelToJson(m).dump();
    const LoadResult back = ModelFromJsonText(json);
    ASSERT_TRUE(back.ok()) << json;
    EXPECT_EQ(*back.model, m);
    EXPECT_EQ(ModelToJson(*back.model).dump(), json);
  }
}

INSTANTIATE_TEST_SUITE_P(Values, RoundTripTest, ::testing::Bool());

TEST(LoadModelFileTest, MissingFile) {
  const LoadResult r = LoadModelFile("/nonexistent/model.scm");
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.diagnostics[0].code, "io-error");
}

}  // namespace
}  // namespace ctrlgame
