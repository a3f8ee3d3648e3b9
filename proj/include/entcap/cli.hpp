// Copyright 2026 The entcap Authors
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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace entcap {

inline constexpr const char* kToolVersion = "0.1.0";

/// Entry point of the `entcap` tool. `args` excludes the program name.
/// Subcommands: generate, label, train, eval, predict, convergence. Every
/// run writes `<primary output>.manifest.json` next to its primary output.
/// Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a of a file's bytes as 16 hex digits.
std::string file_digest(const std::filesystem::path& path);

}  // namespace entcap
