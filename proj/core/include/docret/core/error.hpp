// Copyright 2026 The docret Authors.
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

namespace docret {

enum class ErrorCode {
  kInvalidArgument,
  kIoError,
  kZeroVector,
  kDimError,
  kDimMismatch,
  kDuplicateId,
  kParseError,
  kEmptyText,
  kRemoteUnavailable,
  kAnnUnavailable,
  kDegenerateBatch,
  kMissingNegatives,
  kEmptyQuery,
  kPoolTooSmall,
  kNoNeighbors,
  kDanglingReference,
  kQueryMismatch,
  kBadMagic,
  kCorruptHeader,
  kTruncatedData,
  kSchemaMismatch,
  kZeroTensor,
  kDegenerateData,
  kGridMismatch,
  kOracleLimitExceeded,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure surfaced by the library. The code is stable and is what
/// callers (and the CLI exit-code mapping) dispatch on; the message is for
/// humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace docret
