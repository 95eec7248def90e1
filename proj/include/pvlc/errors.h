// Copyright 2026 The PVLC Authors
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

#ifndef PVLC_ERRORS_H_
#define PVLC_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pvlc {

// Values double as CLI exit codes.
enum class ErrorKind {
  kValidation = 1,
  kInvariant = 2,
  kResourceLimit = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Malformed input or a violated precondition.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message)
      : Error(ErrorKind::kValidation, message) {}
};

// A constructed object failed one of its guaranteed properties.
class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& message)
      : Error(ErrorKind::kInvariant, message) {}
};

// Enumeration or search would exceed the configured budget.
class ResourceLimitExceeded : public Error {
 public:
  explicit ResourceLimitExceeded(const std::string& message)
      : Error(ErrorKind::kResourceLimit, message) {}
};

// Default cap on weighted states visited while building a distribution.
inline constexpr std::uint64_t kDefaultStateLimit = 10'000'000;

}  // namespace pvlc

#endif  // PVLC_ERRORS_H_
