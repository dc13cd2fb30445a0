// Copyright 2026 The qualplan Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qualplan {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two Levels (or a Level and a Scale) from different scales were combined.
class ScaleMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed argument: bad scale labels, out-of-range index, partial policy.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A model (or a model-derived structure) violates a solver precondition.
class InvalidModel : public Error {
 public:
  explicit InvalidModel(std::vector<std::string> problems)
      : Error(join(problems)), problems_(std::move(problems)) {}

  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& problems) {
    std::string out = "invalid model";
    for (const auto& p : problems) {
      out += "\n  ";
      out += p;
    }
    return out;
  }

  std::vector<std::string> problems_;
};

/// Conditioning on an observation whose possibility (or probability) is zero.
class ImpossibleObservation : public Error {
 public:
  using Error::Error;
};

/// A brute-force enumeration would exceed its configured size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A value-iteration sweep lowered some value. Happens when the initial
/// utilities are not maintainable (typically: no stay action).
class NonMonotoneIteration : public Error {
 public:
  using Error::Error;
};

/// Malformed model, belief or policy document.
class ParseError : public Error {
 public:
  explicit ParseError(std::vector<std::string> problems)
      : Error(join(problems)), problems_(std::move(problems)) {}
  explicit ParseError(std::string problem)
      : ParseError(std::vector<std::string>{std::move(problem)}) {}

  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& problems) {
    std::string out = "parse error";
    for (const auto& p : problems) {
      out += "\n  ";
      out += p;
    }
    return out;
  }

  std::vector<std::string> problems_;
};

}  // namespace qualplan
