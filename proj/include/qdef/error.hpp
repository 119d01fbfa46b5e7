// Copyright 2026 The qdef Authors
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

#include <stdexcept>
#include <string>

namespace qdef {

enum class ErrorCode {
    NotHermitian,
    NonSquare,
    NoConvergence,
    DimensionMismatch,
    ZeroMatrix,
    PaddedUnsupported,
    InconsistentRefinement,
    ParseError,
    InvalidArgument,
};

inline const char *error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::NotHermitian:
        return "NotHermitian";
    case ErrorCode::NonSquare:
        return "NonSquare";
    case ErrorCode::NoConvergence:
        return "NoConvergence";
    case ErrorCode::DimensionMismatch:
        return "DimensionMismatch";
    case ErrorCode::ZeroMatrix:
        return "ZeroMatrix";
    case ErrorCode::PaddedUnsupported:
        return "PaddedUnsupported";
    case ErrorCode::InconsistentRefinement:
        return "InconsistentRefinement";
    case ErrorCode::ParseError:
        return "ParseError";
    case ErrorCode::InvalidArgument:
        return "InvalidArgument";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

} // namespace qdef
