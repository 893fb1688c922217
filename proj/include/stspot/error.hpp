// Copyright 2026 The stspot Authors
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

namespace stspot {

enum class ErrorCode {
  kSyntaxError,
  kUnsupportedOperand,
  kEmptyClass,
  kLengthOverflow,
  kUnknownCharacter,
  kNotRepresentable,
  kCapacityExceeded,
  kDegenerateGeometry,
  kNoSpace,
  kMultipleSpaces,
  kMalformedHierarchy,
  kSchemaViolation,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kUnsupportedOperand: return "UnsupportedOperand";
    case ErrorCode::kEmptyClass: return "EmptyClass";
    case ErrorCode::kLengthOverflow: return "LengthOverflow";
    case ErrorCode::kUnknownCharacter: return "UnknownCharacter";
    case ErrorCode::kNotRepresentable: return "NotRepresentable";
    case ErrorCode::kCapacityExceeded: return "CapacityExceeded";
    case ErrorCode::kDegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::kNoSpace: return "NoSpace";
    case ErrorCode::kMultipleSpaces: return "MultipleSpaces";
    case ErrorCode::kMalformedHierarchy: return "MalformedHierarchy";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
  }
  return "UnknownError";
}

/// Exception carrying a machine-checkable code alongside the message.
/// Every code here is caused by caller input; internal invariant failures
/// use plain std::logic_error instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace stspot
