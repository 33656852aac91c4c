// Copyright 2026 The cfx Authors.
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

#ifndef CFX_ERROR_H_
#define CFX_ERROR_H_

#include <stdexcept>
#include <string>

namespace cfx {

// Error categories. The CLI maps these onto its exit codes.
enum class ErrorCode {
  kInvalidInput,      // malformed or inconsistent schema/entity/constraint
  kParse,             // syntax error in a text format (rule DSL, CSV, ...)
  kNothingToExplain,  // the entity under explanation is not labeled 1
  kBackend,           // classifier backend failed (missing row, process, ...)
  kZeroMass,          // probability conditioning on an event of mass zero
  kPrecondition,      // operation called outside its domain
  kNondeterminism,    // classifier returned two labels for one vector
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Syntax error with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(ErrorCode::kParse, "line " + std::to_string(line) + ", column " +
                                     std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace cfx

#endif  // CFX_ERROR_H_
