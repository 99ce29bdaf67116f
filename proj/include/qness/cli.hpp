// Copyright 2026 The qness Authors
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

namespace qness::cli {

inline constexpr const char* kSchemaVersion = "1.0";

enum ExitCode : int { kOk = 0, kUsage = 1, kInvalidInput = 2, kRuntime = 3 };

/// Runs one subcommand (witness, interfere, discord, example, random-state).
/// Reports go to --out when given, otherwise to out; diagnostics go to err.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qness::cli
