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

#ifndef CTRLGAME_DSL_H_
#define CTRLGAME_DSL_H_

#include <string>
#include <string_view>

#include "ctrlgame/error.h"
#include "ctrlgame/model.h"

// Textual model format.
//
//   model      := "model" STRING scale? assets objectives control+ family
//                 require* budget profile+
//   scale      := "scale" "{" (IDENT "=" NUMBER)+ "}"
//   assets     := "assets" "{" IDENT ("," IDENT)* "}"
//   objectives := "objectives" "{" IDENT ("," IDENT)* "}"
//   control    := "control" IDENT STRING "cost" NUMBER
//                 "{" (IDENT ":" assign ("," assign)*)* "}"
//   assign     := IDENT "=" (IDENT | NUMBER)
//   family     := "family" "=" termExpr
//   termExpr   := termExpr "+" termFactor | termFactor
//   termFactor := termFactor "." termAtom | termAtom
//   termAtom   := IDENT | "0" | "1" | "opt" "[" IDENT ("," IDENT)* "]"
//               | "(" termExpr ")"
//   require    := "require" termAtom "->" termAtom
//   budget     := "budget" NUMBER
//   profile    := "profile" STRING "{" ("objective" "{" cell ("," cell)* "}")+ "}"
//   cell       := IDENT "." IDENT
//
// Whitespace is insignificant and '#' starts a comment running to the end of
// the line.
namespace ctrlgame {

// A located parse failure; line/column are 1-based.
class TermSyntaxError : public Error {
 public:
  TermSyntaxError(const std::string& message, int line, int column,
                  std::string code = "syntax")
      : Error(std::move(code), message), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Parses a model; on success runs Validate and appends its warnings.
LoadResult ParseModel(std::string_view text);

// Canonical source text. ParseModel(PrintModel(m)) reproduces m exactly.
std::string PrintModel(const ModelSpec& spec);

// A standalone termExpr, as used for the family in JSON documents. Only
// syntax is checked here, not whether the atoms are declared.
Term ParseTerm(std::string_view text);

// Minimal parenthesization; left-leaning chains of (a + 1) print as opt[...].
std::string PrintTerm(const Term& term);
// Same, but wrapped in parentheses unless the term is a termAtom.
std::string PrintTermAtom(const Term& term);

// Shortest decimal text that reads back to the same double.
std::string FormatNumber(double value);

}  // namespace ctrlgame

#endif  // CTRLGAME_DSL_H_
