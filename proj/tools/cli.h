// tools/cli.h

// Copyright 2026  The diarkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef DIARKIT_TOOLS_CLI_H_
#define DIARKIT_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace diarkit::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitMetricUndefined = 1,
  kExitParse = 2,
  kExitValidation = 3,
  kExitUsage = 4,
};

// Runs the diarkit command line. args[0] is the program name. Reports go to
// `out` unless --output names a file; diagnostics go to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace diarkit::cli

#endif  // DIARKIT_TOOLS_CLI_H_
