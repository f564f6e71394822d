// Copyright 2026 The agvplan Authors
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

#ifndef AGV_CLI_CLI_HPP_
#define AGV_CLI_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace agv::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInfeasible = 2,
  kIoError = 3,
};

// Runs the agvplan command line. `args` excludes the program name. Machine
// output goes to `out` (when a path is "-"), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace agv::cli

#endif  // AGV_CLI_CLI_HPP_
