// Copyright 2026 The predual project
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

#include <iosfwd>
#include <string>
#include <vector>

namespace predual {

/// Process exit codes shared by every subcommand.
inline constexpr int kExitPass = 0;          // all checks passed / conclusive
inline constexpr int kExitInconclusive = 1;  // failed checks or open verdict
inline constexpr int kExitValidation = 2;    // bad input, flags, or model data
inline constexpr int kExitIo = 3;            // file could not be read/written
inline constexpr int kExitBlowup = 4;        // non-finite state during flow

/// Runs the predual tool on argv-style arguments (program name excluded).
/// JSON reports go to out, diagnostics to err; returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace predual
