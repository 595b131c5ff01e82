// Copyright 2026 The filterkey Authors
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

#include <json.hpp>

#include "filterkey/states.hpp"

namespace filterkey::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInvalidArguments = 1,
  kNumericalFailure = 2,
};

/// Runs the command line (args excludes the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// The document printed by `analyze`.
nlohmann::json analysis_report(Family family, double p);

}  // namespace filterkey::cli
