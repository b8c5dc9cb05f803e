// Copyright 2026 The dhg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
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

namespace dhg::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,  // bad flags, bad timestamps, invalid configs
  kExitIo = 2,     // unreadable inputs, unwritable outputs
  kExitData = 3,   // malformed snapshots or bundles that fail verification
};

/// Runs one command line (without the program name). Data goes to `out`,
/// diagnostics and logs to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dhg::cli
