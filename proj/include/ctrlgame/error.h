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

#ifndef CTRLGAME_ERROR_H_
#define CTRLGAME_ERROR_H_

#include <stdexcept>
#include <string>

namespace ctrlgame {

// Every failure raised by the library carries a stable machine-readable code
// (e.g. "unknown-control", "no-strategies") next to the human message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Ill-formed algebra input: duplicate ids in opt[], refinement against 0,
// a term beyond the choice limit.
class SpecificationError : public Error {
 public:
  using Error::Error;
};

// A reference into the model that does not resolve.
class ModelError : public Error {
 public:
  using Error::Error;
};

// The strategy space is empty (over-constrained family or budget too small).
class NoStrategiesError : public Error {
 public:
  explicit NoStrategiesError(const std::string& message)
      : Error("no-strategies", message) {}
};

}  // namespace ctrlgame

#endif  // CTRLGAME_ERROR_H_
