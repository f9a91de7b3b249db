// Copyright 2026 The voi-toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace voi {

// One violated invariant, e.g. {"sum_to_one", "prior", "sum ≠ 1 (got 1.2)"}.
struct Diagnostic {
  std::string invariant;
  std::string location;
  std::string message;
};

using Diagnostics = std::vector<Diagnostic>;

inline std::string describe(const Diagnostics& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    if (!out.empty()) out += "; ";
    out += d.location + ": " + d.message;
  }
  return out;
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: an invariant of a model, loss, or measure does not hold.
class ValidationError : public Error {
 public:
  explicit ValidationError(Diagnostics diagnostics)
      : Error(describe(diagnostics)), diagnostics_(std::move(diagnostics)) {}
  ValidationError(std::string invariant, std::string location,
                  std::string message)
      : ValidationError(Diagnostics{
            {std::move(invariant), std::move(location), std::move(message)}}) {
  }

  const Diagnostics& diagnostics() const { return diagnostics_; }

 private:
  Diagnostics diagnostics_;
};

// An optimizer or inner minimization could not produce a usable answer.
class SolverError : public Error {
 public:
  using Error::Error;
};

// An exhaustive enumeration would exceed its configured cap.
class CapExceeded : public SolverError {
 public:
  CapExceeded(std::uint64_t required, std::uint64_t cap, const std::string& hint = "")
      : SolverError("enumeration needs " + std::to_string(required) +
                    " candidates but the cap is " + std::to_string(cap) +
                    (hint.empty() ? "" : "; " + hint)),
        required_(required),
        cap_(cap) {}

  std::uint64_t required() const { return required_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

}  // namespace voi
