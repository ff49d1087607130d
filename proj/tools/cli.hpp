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

#ifndef SFCORR_TOOLS_CLI_HPP
#define SFCORR_TOOLS_CLI_HPP

#include <ostream>

#include "sfcorr/error.hpp"

namespace sfcorr::cli {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kRange = 2,
    kDegenerate = 3,
    kParse = 4,
    kNotHermitian = 5,
    kUsage = 64,
};

int exit_code_for(ErrorCode code);

/// Runs one invocation. Reports go to `out` (or to the --out file),
/// diagnostics to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace sfcorr::cli

#endif
