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

#include "docret/core/error.hpp"

namespace docret {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kDimError: return "DimError";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kEmptyText: return "EmptyText";
    case ErrorCode::kRemoteUnavailable: return "RemoteUnavailable";
    case ErrorCode::kAnnUnavailable: return "AnnUnavailable";
    case ErrorCode::kDegenerateBatch: return "DegenerateBatch";
    case ErrorCode::kMissingNegatives: return "MissingNegatives";
    case ErrorCode::kEmptyQuery: return "EmptyQuery";
    case ErrorCode::kPoolTooSmall: return "PoolTooSmall";
    case ErrorCode::kNoNeighbors: return "NoNeighbors";
    case ErrorCode::kDanglingReference: return "DanglingReference";
    case ErrorCode::kQueryMismatch: return "QueryMismatch";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kCorruptHeader: return "CorruptHeader";
    case ErrorCode::kTruncatedData: return "TruncatedData";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kZeroTensor: return "ZeroTensor";
    case ErrorCode::kDegenerateData: return "DegenerateData";
    case ErrorCode::kGridMismatch: return "GridMismatch";
    case ErrorCode::kOracleLimitExceeded: return "OracleLimitExceeded";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace docret
