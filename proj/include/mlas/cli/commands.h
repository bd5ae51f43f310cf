// mlas/cli/commands.h
//
// Copyright 2026 The mlas Authors
//
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

// Command-line front end. Every command reads one experiment config and
// works inside its output directory:
//   <out>/corpus/                     gen-corpus
//   <out>/models/<variant>/           train (monolingual: one dir per language)
//   <out>/eval/<model>/<split>/       eval
//   <out>/probes/<kind>/<model>/      probe
//   <out>/inspect/<model>/            inspect

#ifndef MLAS_CLI_COMMANDS_H_
#define MLAS_CLI_COMMANDS_H_

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

namespace mlas {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitDiverged = 4;
inline constexpr int kExitFingerprint = 5;
inline constexpr int kExitVariant = 6;

inline constexpr const char* kLockFile = ".mlas.lock";

// Maps an exception to the documented exit code.
int exitCodeFor(const std::exception& e);

// `args` excludes the program name. Human-readable output goes to `out`,
// diagnostics to `err`.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mlas

#endif  // MLAS_CLI_COMMANDS_H_
