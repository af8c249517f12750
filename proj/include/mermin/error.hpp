// Copyright 2026 The mermin Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mermin {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input (circuit files, run configs). Carries the 1-based
/// line number; `what()` already ends with ", line N".
class ParseError : public Error {
  public:
    ParseError(const std::string &message, std::size_t line)
        : Error(message + ", line " + std::to_string(line)), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// A circuit cannot be lowered onto the device (e.g. a CNOT that does not
/// touch the star centre).
class ConstraintError : public Error {
  public:
    using Error::Error;
};

} // namespace mermin
