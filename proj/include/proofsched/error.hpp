// Copyright 2026 The proofsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace proofsched {

enum class ErrorKind {
  Parse,
  UnknownLocation,
  DuplicateLocation,
  NotEnabled,
  InvalidPairing,
  MismatchedInitial,
  MalformedStructure,
  NotACut,
  Clash,
  OccursCheck,
  CapExceeded,
  Incompatible,
  NotCongruent,
  TypeMismatch,
  NotConsistent,
  NotMaximal,
  NotExecutable,
  Internal,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Execution failures remember which step of a trace was rejected.
class StepError : public Error {
 public:
  StepError(std::size_t index, const std::string& message)
      : Error(ErrorKind::NotEnabled, message), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Parse failures carry a 1-based line and column.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(ErrorKind::Parse, std::to_string(line) + ":" +
                                    std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace proofsched
