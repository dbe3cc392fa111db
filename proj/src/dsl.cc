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

#include "ctrlgame/dsl.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <vector>

namespace ctrlgame {

std::string FormatNumber(double value) {
  if (value == 0.0) return "0";  // also folds -0
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

namespace {

// ---------------------------------------------------------------------------
// Lexer

struct Token {
  enum class Kind { kIdent, kNumber, kString, kPunct, kArrow, kEnd };
  Kind kind = Kind::kEnd;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

bool IsIdentChar(char ch) {
  return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
         ch == '_' || ch == '-';
}

bool IsDigit(char ch) { return ch >= '0' && ch <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  // Throws TermSyntaxError on the first malformed token.
  std::vector<Token> Run() {
    std::vector<Token> out;
    for (;;) {
      SkipSpaceAndComments();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      const char ch = src_[pos_];
      if (ch == '"') {
        LexString(t);
      } else if (ch == '-' && Peek(1) == '>') {
        t.kind = Token::Kind::kArrow;
        t.text = "->";
        Advance(2);
      } else if (ch == '-' || IsDigit(ch)) {
        LexNumberOrIdent(t);
      } else if (IsIdentChar(ch)) {
        t.kind = Token::Kind::kIdent;
        t.text = ScanIdent();
      } else if (std::string_view("{},:=+.[]()").find(ch) != std::string_view::npos) {
        t.kind = Token::Kind::kPunct;
        t.text = std::string(1, ch);
        Advance(1);
      } else {
        throw TermSyntaxError(std::string("unexpected character '") + ch + "'", line_, column_);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char Peek(std::size_t ahead) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void Advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_) {
      if (src_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
    }
  }

  void SkipSpaceAndComments() {
    while (pos_ < src_.size()) {
      const char ch = src_[pos_];
      if (ch == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') Advance(1);
      } else if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
        Advance(1);
      } else {
        break;
      }
    }
  }

  // An identifier run stops before "->" so that "a->b" splits cleanly.
  std::string ScanIdent() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && IsIdentChar(src_[pos_]) &&
           !(src_[pos_] == '-' && Peek(1) == '>')) {
      Advance(1);
    }
    return std::string(src_.substr(start, pos_ - start));
  }

  void LexString(Token& t) {
    t.kind = Token::Kind::kString;
    Advance(1);
    for (;;) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') {
        throw TermSyntaxError("unterminated string", t.line, t.column);
      }
      const char ch = src_[pos_];
      if (ch == '"') {
        Advance(1);
        return;
      }
      if (ch == '\\') {
        const char next = Peek(1);
        if (next == 'n') {
          t.text += '\n';
        } else if (next == '"' || next == '\\') {
          t.text += next;
        } else {
          throw TermSyntaxError("unknown escape in string", line_, column_);
        }
        Advance(2);
        continue;
      }
      t.text += ch;
      Advance(1);
    }
  }

  // NUMBER := '-'? digits ('.' digits)? ([eE] [+-]? digits)?. A leading digit
  // run that continues with identifier characters is an identifier ("2FA").
  void LexNumberOrIdent(Token& t) {
    std::size_t p = pos_;
    bool plain = true;  // digits only so far
    if (src_[p] == '-') {
      ++p;
      plain = false;
      if (p >= src_.size() || !IsDigit(src_[p])) {
        throw TermSyntaxError("expected a number after '-'", line_, column_);
      }
    }
    while (p < src_.size() && IsDigit(src_[p])) ++p;
    if (p + 1 < src_.size() && src_[p] == '.' && IsDigit(src_[p + 1])) {
      plain = false;
      ++p;
      while (p < src_.size() && IsDigit(src_[p])) ++p;
    }
    if (p < src_.size() && (src_[p] == 'e' || src_[p] == 'E')) {
      std::size_t q = p + 1;
      if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) ++q;
      if (q < src_.size() && IsDigit(src_[q])) {
        while (q < src_.size() && IsDigit(src_[q])) ++q;
        if (q >= src_.size() || !IsIdentChar(src_[q]) ||
            (src_[q] == '-' && q + 1 < src_.size() && src_[q + 1] == '>')) {
          p = q;
          plain = false;
        }
      }
    }
    const bool continues = p < src_.size() && IsIdentChar(src_[p]) &&
                           !(src_[p] == '-' && p + 1 < src_.size() && src_[p + 1] == '>');
    if (continues) {
      if (!plain) throw TermSyntaxError("malformed number", line_, column_);
      t.kind = Token::Kind::kIdent;
      t.text = ScanIdent();
      return;
    }
    t.kind = Token::Kind::kNumber;
    t.text = std::string(src_.substr(pos_, p - pos_));
    const char* first = t.text.data();
    auto [ptr, ec] = std::from_chars(first, first + t.text.size(), t.number);
    if (ec != std::errc() || ptr != first + t.text.size() || !std::isfinite(t.number)) {
      throw TermSyntaxError("malformed number '" + t.text + "'", line_, column_);
    }
    Advance(p - pos_);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

std::string Describe(const Token& t) {
  switch (t.kind) {
    case Token::Kind::kEnd:
      return "end of input";
    case Token::Kind::kString:
      return "string \"" + t.text + "\"";
    default:
      return "'" + t.text + "'";
  }
}

// ---------------------------------------------------------------------------
// Parser

struct AtomUse {
  ControlId id;
  int line;
  int column;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool AtPunct(std::string_view p) const {
    return peek().kind == Token::Kind::kPunct && peek().text == p;
  }
  bool AtKeyword(std::string_view k) const {
    return peek().kind == Token::Kind::kIdent && peek().text == k;
  }
  bool AtEnd() const { return peek().kind == Token::Kind::kEnd; }

  [[noreturn]] void Fail(const std::string& expected) const {
    throw TermSyntaxError("expected " + expected + ", found " + Describe(peek()), peek().line,
                          peek().column);
  }

  Token Take() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }

  void ExpectPunct(std::string_view p) {
    if (!AtPunct(p)) Fail("'" + std::string(p) + "'");
    ++pos_;
  }
  void ExpectKeyword(std::string_view k) {
    if (!AtKeyword(k)) Fail("'" + std::string(k) + "'");
    ++pos_;
  }
  Token ExpectIdent(const std::string& what) {
    if (peek().kind != Token::Kind::kIdent) Fail(what);
    return Take();
  }
  Token ExpectString(const std::string& what) {
    if (peek().kind != Token::Kind::kString) Fail(what);
    return Take();
  }
  Token ExpectNumber(const std::string& what) {
    if (peek().kind != Token::Kind::kNumber) Fail(what);
    return Take();
  }

  Term TermExpr() {
    Term t = TermFactor();
    while (AtPunct("+")) {
      ++pos_;
      t = Term::Choice(std::move(t), TermFactor());
    }
    return t;
  }

  Term TermFactor() {
    Term t = TermAtom();
    while (AtPunct(".")) {
      ++pos_;
      t = Term::Comp(std::move(t), TermAtom());
    }
    return t;
  }

  Term TermAtom() {
    const Token& t = peek();
    if (t.kind == Token::Kind::kNumber) {
      if (t.text == "0") {
        ++pos_;
        return Term::Zero();
      }
      if (t.text == "1") {
        ++pos_;
        return Term::One();
      }
      Fail("a term");
    }
    if (AtPunct("(")) {
      ++pos_;
      Term inner = TermExpr();
      ExpectPunct(")");
      return inner;
    }
    if (t.kind == Token::Kind::kIdent && t.text == "opt" && peek(1).kind == Token::Kind::kPunct &&
        peek(1).text == "[") {
      const Token opt_tok = Take();
      ++pos_;
      std::vector<ControlId> ids;
      std::set<ControlId> seen;
      for (;;) {
        Token id = ExpectIdent("a control id");
        ControlId cid(id.text);
        if (!seen.insert(cid).second) {
          throw TermSyntaxError("duplicate control '" + id.text + "' in opt[...]", id.line,
                                id.column, "duplicate-id");
        }
        atoms_.push_back({cid, id.line, id.column});
        ids.push_back(std::move(cid));
        if (AtPunct(",")) {
          ++pos_;
          continue;
        }
        ExpectPunct("]");
        break;
      }
      return Opt(ids);
    }
    if (t.kind == Token::Kind::kIdent) {
      Token id = Take();
      atoms_.push_back({ControlId(id.text), id.line, id.column});
      return Term::Atom(id.text);
    }
    Fail("a term");
  }

  std::vector<AtomUse> TakeAtoms() { return std::exchange(atoms_, {}); }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<AtomUse> atoms_;
};

class ModelReader {
 public:
  explicit ModelReader(Parser& p) : p_(p) {}

  ModelSpec Read() {
    if (!p_.AtKeyword("model")) {
      throw TermSyntaxError("missing model header", p_.peek().line, p_.peek().column,
                            "missing-model-header");
    }
    p_.Take();
    spec_.name = p_.ExpectString("model name string").text;
    if (p_.AtKeyword("scale")) ReadScale();
    p_.ExpectKeyword("assets");
    spec_.assets = ReadIdList("asset");
    p_.ExpectKeyword("objectives");
    spec_.objectives = ReadIdList("objective");
    if (!p_.AtKeyword("control")) p_.Fail("'control'");
    while (p_.AtKeyword("control")) ReadControl();

    p_.ExpectKeyword("family");
    p_.ExpectPunct("=");
    spec_.family = p_.TermExpr();
    CheckAtoms();
    while (p_.AtKeyword("require")) ReadRequirement();

    p_.ExpectKeyword("budget");
    const Token b = p_.ExpectNumber("budget amount");
    if (b.number < 0.0) Error(b, "negative-budget", "budget must be non-negative");
    spec_.budget = b.number;

    if (!p_.AtKeyword("profile")) p_.Fail("'profile'");
    while (p_.AtKeyword("profile")) ReadProfile();
    if (!p_.AtEnd()) p_.Fail("'profile' or end of input");
    return std::move(spec_);
  }

  std::vector<Diagnostic>& diagnostics() { return diags_; }

 private:
  void Error(const Token& at, std::string code, std::string message) {
    diags_.push_back(
        {Severity::kError, {at.line, at.column, {}}, std::move(message), std::move(code)});
  }

  void ReadScale() {
    p_.Take();
    p_.ExpectPunct("{");
    std::vector<std::pair<std::string, double>> labels;
    std::set<std::string> seen;
    do {
      const Token label = p_.ExpectIdent("scale label");
      p_.ExpectPunct("=");
      const Token value = p_.ExpectNumber("effectiveness value");
      if (!seen.insert(label.text).second) {
        Error(label, "duplicate-declaration", "duplicate scale label '" + label.text + "'");
        continue;
      }
      if (value.number < 0.0 || value.number > 1.0) {
        Error(value, "effectiveness-range", "effectiveness outside [0,1]");
        continue;
      }
      labels.emplace_back(label.text, value.number);
    } while (!p_.AtPunct("}"));
    p_.ExpectPunct("}");
    spec_.scale = EffScale(std::move(labels));
  }

  std::vector<std::string> ReadIdList(const std::string& what) {
    p_.ExpectPunct("{");
    std::vector<std::string> ids;
    std::set<std::string> seen;
    for (;;) {
      const Token id = p_.ExpectIdent(what + " id");
      if (!seen.insert(id.text).second) {
        Error(id, "duplicate-declaration", "duplicate " + what + " '" + id.text + "'");
      } else {
        ids.push_back(id.text);
      }
      if (p_.AtPunct(",")) {
        p_.Take();
        continue;
      }
      p_.ExpectPunct("}");
      return ids;
    }
  }

  bool KnownAsset(const std::string& a) const {
    return std::find(spec_.assets.begin(), spec_.assets.end(), a) != spec_.assets.end();
  }
  bool KnownObjective(const std::string& o) const {
    return std::find(spec_.objectives.begin(), spec_.objectives.end(), o) !=
           spec_.objectives.end();
  }

  void ReadControl() {
    p_.Take();
    const Token id = p_.ExpectIdent("control id");
    ControlSpec c;
    c.id = ControlId(id.text);
    if (!control_ids_.insert(c.id).second) {
      Error(id, "duplicate-declaration", "duplicate control '" + id.text + "'");
    }
    c.name = p_.ExpectString("control display name").text;
    p_.ExpectKeyword("cost");
    const Token cost = p_.ExpectNumber("cost");
    if (cost.number < 0.0) Error(cost, "negative-cost", "negative cost not supported");
    c.cost = cost.number;
    p_.ExpectPunct("{");
    std::set<Cell> seen;
    while (!p_.AtPunct("}")) {
      const Token asset = p_.ExpectIdent("asset id or '}'");
      if (!KnownAsset(asset.text)) Error(asset, "unknown-asset", "unknown asset '" + asset.text + "'");
      p_.ExpectPunct(":");
      for (;;) {
        const Token objective = p_.ExpectIdent("objective id");
        if (!KnownObjective(objective.text)) {
          Error(objective, "unknown-objective", "unknown objective '" + objective.text + "'");
        }
        p_.ExpectPunct("=");
        PayoffEntry entry;
        entry.cell = {asset.text, objective.text};
        const Token value = p_.peek();
        if (value.kind == Token::Kind::kIdent) {
          p_.Take();
          entry.eff.label = value.text;
          if (auto v = spec_.scale.lookup(value.text)) {
            entry.eff.value = *v;
          } else {
            Error(value, "unknown-label", "unknown scale label '" + value.text + "'");
          }
        } else if (value.kind == Token::Kind::kNumber) {
          p_.Take();
          entry.eff.value = value.number;
          if (value.number < 0.0 || value.number > 1.0) {
            Error(value, "effectiveness-range", "effectiveness outside [0,1]");
          }
        } else {
          p_.Fail("scale label or number");
        }
        if (!seen.insert(entry.cell).second) {
          Error(objective, "duplicate-declaration",
                "duplicate payoff entry for " + entry.cell.key());
        }
        c.payoff.push_back(std::move(entry));
        if (p_.AtPunct(",")) {
          p_.Take();
          continue;
        }
        break;
      }
    }
    p_.ExpectPunct("}");
    spec_.controls.push_back(std::move(c));
  }

  void CheckAtoms() {
    for (const auto& use : p_.TakeAtoms()) {
      if (!control_ids_.count(use.id)) {
        diags_.push_back({Severity::kError,
                          {use.line, use.column, {}},
                          "unknown control '" + use.id.str() + "'",
                          "unknown-control"});
      }
    }
  }

  void ReadRequirement() {
    const Token kw = p_.Take();
    Term antecedent = p_.TermAtom();
    if (p_.peek().kind != Token::Kind::kArrow) p_.Fail("'->'");
    p_.Take();
    Requirement r{std::move(antecedent), p_.TermAtom()};
    CheckAtoms();
    if (r.antecedent.contains_zero() || r.consequent.contains_zero()) {
      Error(kw, "requirement-zero", "requirement terms may not contain 0");
    }
    spec_.requirements.push_back(std::move(r));
  }

  void ReadProfile() {
    p_.Take();
    const Token name = p_.ExpectString("profile name string");
    if (!profile_names_.insert(name.text).second) {
      Error(name, "duplicate-declaration", "duplicate profile '" + name.text + "'");
    }
    AttackerProfile profile;
    profile.name = name.text;
    p_.ExpectPunct("{");
    if (!p_.AtKeyword("objective")) p_.Fail("'objective'");
    while (p_.AtKeyword("objective")) {
      p_.Take();
      p_.ExpectPunct("{");
      AttackerObjective ao;
      std::set<Cell> seen;
      for (;;) {
        const Token asset = p_.ExpectIdent("asset id");
        p_.ExpectPunct(".");
        const Token objective = p_.ExpectIdent("objective id");
        if (!KnownAsset(asset.text)) Error(asset, "unknown-asset", "unknown asset '" + asset.text + "'");
        if (!KnownObjective(objective.text)) {
          Error(objective, "unknown-objective", "unknown objective '" + objective.text + "'");
        }
        Cell cell{asset.text, objective.text};
        if (!seen.insert(cell).second) {
          Error(asset, "duplicate-cell", "cell " + cell.key() + " listed twice in one objective");
        } else {
          ao.cells.push_back(std::move(cell));
        }
        if (p_.AtPunct(",")) {
          p_.Take();
          continue;
        }
        p_.ExpectPunct("}");
        break;
      }
      profile.stages.push_back(std::move(ao));
    }
    p_.ExpectPunct("}");
    spec_.profiles.push_back(std::move(profile));
  }

  Parser& p_;
  ModelSpec spec_;
  std::vector<Diagnostic> diags_;
  std::set<ControlId> control_ids_;
  std::set<std::string> profile_names_;
};

// ---------------------------------------------------------------------------
// Printing

enum class Level { kExpr, kFactor, kAtom };

bool OptChain(const Term& t, std::vector<ControlId>& ids) {
  auto optional_atom = [](const Term& x) {
    return x.kind() == Term::Kind::kChoice && x.left().kind() == Term::Kind::kAtom &&
           x.right().kind() == Term::Kind::kOne;
  };
  if (optional_atom(t)) {
    ids.push_back(t.left().atom());
    return true;
  }
  if (t.kind() == Term::Kind::kComp && optional_atom(t.right()) && OptChain(t.left(), ids)) {
    ids.push_back(t.right().left().atom());
    return true;
  }
  return false;
}

std::string Print(const Term& t, Level level) {
  std::vector<ControlId> ids;
  if (OptChain(t, ids) && std::set<ControlId>(ids.begin(), ids.end()).size() == ids.size()) {
    std::string out = "opt[";
    for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? ", " : "") + ids[i].str();
    return out + "]";
  }
  switch (t.kind()) {
    case Term::Kind::kZero:
      return "0";
    case Term::Kind::kOne:
      return "1";
    case Term::Kind::kAtom:
      return t.atom().str();
    case Term::Kind::kChoice: {
      std::string s = Print(t.left(), Level::kExpr) + " + " + Print(t.right(), Level::kFactor);
      return level == Level::kExpr ? s : "(" + s + ")";
    }
    case Term::Kind::kComp: {
      std::string s = Print(t.left(), Level::kFactor) + " . " + Print(t.right(), Level::kAtom);
      return level == Level::kAtom ? "(" + s + ")" : s;
    }
  }
  return {};
}

std::string Quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') {
      out += '\\';
      out += ch;
    } else if (ch == '\n') {
      out += "\\n";
    } else {
      out += ch;
    }
  }
  return out + "\"";
}

std::string JoinIds(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? ", " : "") + ids[i];
  return out;
}

}  // namespace

std::string PrintTerm(const Term& term) { return Print(term, Level::kExpr); }

std::string PrintTermAtom(const Term& term) { return Print(term, Level::kAtom); }

Term ParseTerm(std::string_view text) {
  Parser p(Lexer(text).Run());
  Term t = p.TermExpr();
  if (!p.AtEnd()) p.Fail("end of term");
  return t;
}

LoadResult ParseModel(std::string_view text) {
  LoadResult result;
  try {
    Parser parser(Lexer(text).Run());
    ModelReader reader(parser);
    ModelSpec spec = reader.Read();
    result.diagnostics = std::move(reader.diagnostics());
    if (HasErrors(result.diagnostics)) return result;
    auto extra = Validate(spec);
    const bool failed = HasErrors(extra);
    result.diagnostics.insert(result.diagnostics.end(), extra.begin(), extra.end());
    if (!failed) result.model = std::move(spec);
  } catch (const TermSyntaxError& e) {
    result.diagnostics.push_back(
        {Severity::kError, {e.line(), e.column(), {}}, e.what(), e.code()});
  }
  return result;
}

std::string PrintModel(const ModelSpec& spec) {
  std::string out = "model " + Quote(spec.name) + "\n";
  if (!(spec.scale == EffScale::Default())) {
    out += "scale {\n";
    for (const auto& [label, value] : spec.scale.labels()) {
      out += "  " + label + " = " + FormatNumber(value) + "\n";
    }
    out += "}\n";
  }
  out += "assets { " + JoinIds(spec.assets) + " }\n";
  out += "objectives { " + JoinIds(spec.objectives) + " }\n\n";
  for (const auto& c : spec.controls) {
    out += "control " + c.id.str() + " " + Quote(c.name) + " cost " + FormatNumber(c.cost) + " {";
    std::size_t i = 0;
    while (i < c.payoff.size()) {
      const std::string& asset = c.payoff[i].cell.asset;
      out += "\n  " + asset + ":";
      for (bool first = true; i < c.payoff.size() && c.payoff[i].cell.asset == asset;
           ++i, first = false) {
        const auto& e = c.payoff[i];
        out += std::string(first ? " " : ", ") + e.cell.objective + " = " +
               (e.eff.label ? *e.eff.label : FormatNumber(e.eff.value));
      }
    }
    out += c.payoff.empty() ? "}\n" : "\n}\n";
  }
  out += "\nfamily = " + PrintTerm(spec.family) + "\n";
  for (const auto& r : spec.requirements) {
    out += "require " + PrintTermAtom(r.antecedent) + " -> " + PrintTermAtom(r.consequent) + "\n";
  }
  out += "budget " + FormatNumber(spec.budget) + "\n";
  for (const auto& p : spec.profiles) {
    out += "\nprofile " + Quote(p.name) + " {\n";
    for (const auto& stage : p.stages) {
      out += "  objective { ";
      for (std::size_t i = 0; i < stage.cells.size(); ++i) {
        out += (i ? ", " : "") + stage.cells[i].key();
      }
      out += " }\n";
    }
    out += "}\n";
  }
  return out;
}

}  // namespace ctrlgame
