// Copyright 2026 The duelbench Authors.
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

#ifndef DUELBENCH_CLI_HPP_
#define DUELBENCH_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace duelbench {

// Process exit codes of the duelbench command.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitValidation = 2,
  kExitRuntime = 3,
};

// Runs one command line (args[0] is the program name). Reports go to `out`,
// warnings and errors to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace duelbench

#endif  // DUELBENCH_CLI_HPP_
