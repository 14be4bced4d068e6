// Copyright 2026 The qfilter Authors
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

// In-process entry point of the qfilter tool, shared by main() and the tests.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qfilter::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kBadConfig = 2,
  kRunFailed = 3,
};

// argv[0] is the program name, as in main().
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfilter::cli
