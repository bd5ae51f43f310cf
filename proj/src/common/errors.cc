// mlas/common/errors.cc
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

#include "mlas/common/errors.h"

#include <cstdio>

#include "mlas/common/hash.h"

namespace mlas {

namespace {

std::string describeCodepoint(char32_t cp) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "U+%04X", static_cast<unsigned>(cp));
  return buf;
}

std::string joinIds(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ", ";
    if (i == 10) {
      out += "... (" + std::to_string(ids.size()) + " total)";
      break;
    }
    out += ids[i];
  }
  return out;
}

}  // namespace

OovError::OovError(char32_t codepoint, std::size_t position)
    : Error("character " + describeCodepoint(codepoint) + " at position " +
            std::to_string(position) + " is not in the vocabulary"),
      codepoint_(codepoint),
      position_(position) {}

DivergedError::DivergedError(std::int64_t step, double loss)
    : Error("training diverged at step " + std::to_string(step) +
            " (loss = " + std::to_string(loss) + ")"),
      step_(step),
      loss_(loss) {}

CoverageError::CoverageError(std::vector<std::string> missing)
    : Error("no hypothesis for utterance(s): " + joinIds(missing)),
      missing_(std::move(missing)) {}

std::string toHex(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace mlas
