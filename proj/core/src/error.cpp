// Copyright 2026 The sfcorr Authors
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

#include "sfcorr/error.hpp"

namespace sfcorr {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::OutOfRange:
            return "OutOfRange";
        case ErrorCode::ConvergenceFailure:
            return "ConvergenceFailure";
        case ErrorCode::DegenerateReadout:
            return "DegenerateReadout";
        case ErrorCode::InvalidAxis:
            return "InvalidAxis";
        case ErrorCode::GridTooSmall:
            return "GridTooSmall";
        case ErrorCode::NotUnitary:
            return "NotUnitary";
        case ErrorCode::NotHermitian:
            return "NotHermitian";
        case ErrorCode::NotNormalized:
            return "NotNormalized";
        case ErrorCode::NonFinite:
            return "NonFinite";
        case ErrorCode::InvalidEnsemble:
            return "InvalidEnsemble";
        case ErrorCode::Parse:
            return "Parse";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {
}

void fail(ErrorCode code, const std::string &message) {
    throw Error(code, message);
}

}  // namespace sfcorr
