// Copyright 2026 The seekev Authors
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

#ifndef SEEKEV_ERROR_HPP
#define SEEKEV_ERROR_HPP

#include <stdexcept>
#include <string>

namespace seekev {

// Failure categories. The CLI maps each one to a process exit code.
enum class ErrorKind {
  kPrecondition,   // caller passed an invalid argument or graph edit
  kParse,          // malformed input file
  kConfig,         // invalid experiment configuration
  kGuardExceeded,  // problem too large for an exhaustive routine
  kNumerical,      // solver failure (infeasible, unbounded, no convergence)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorKind::kPrecondition, what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(ErrorKind::kParse, "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorKind::kConfig, what) {}
};

class GuardExceeded : public Error {
 public:
  explicit GuardExceeded(const std::string& what)
      : Error(ErrorKind::kGuardExceeded, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorKind::kNumerical, what) {}
};

}  // namespace seekev

#endif  // SEEKEV_ERROR_HPP
