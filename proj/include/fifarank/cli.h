// Copyright 2026 The fifarank Authors
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

// Command-line entry point. Split from main() so tests can drive it in-process.

#ifndef FIFARANK_CLI_H_
#define FIFARANK_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace fifarank {

// Returns the process exit code: 0 success, 1 invalid data, 2 usage or I/O.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// 64-bit FNV-1a, used to name run directories after their manifest.
std::uint64_t Fnv1a64(std::string_view bytes);

// Directory `<base>/<subcommand>-<hash of manifest>`.
std::string RunDirectory(const std::string& base, const nlohmann::json& manifest);

}  // namespace fifarank

#endif  // FIFARANK_CLI_H_
