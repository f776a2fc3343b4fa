// Copyright 2026 The ttemb Authors
// SPDX-License-Identifier: Apache-2.0
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

#include "ttemb/error.h"

namespace ttemb {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kModeOutOfRange: return "ModeOutOfRange";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
    case ErrorCode::kInfeasibleOrder: return "InfeasibleOrder";
    case ErrorCode::kRankOutOfRange: return "RankOutOfRange";
    case ErrorCode::kTokenOutOfRange: return "TokenOutOfRange";
    case ErrorCode::kDuplicateToken: return "DuplicateToken";
    case ErrorCode::kTokenNotFound: return "TokenNotFound";
    case ErrorCode::kEmptySequence: return "EmptySequence";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kCorruptFile: return "CorruptFile";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace ttemb
