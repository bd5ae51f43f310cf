// mlas/common/utf8.h
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

#ifndef MLAS_COMMON_UTF8_H_
#define MLAS_COMMON_UTF8_H_

#include <string>
#include <string_view>
#include <vector>

namespace mlas::utf8 {

// Throws InvalidArgument on malformed input.
std::vector<char32_t> decode(std::string_view text);

std::string encode(char32_t codepoint);
std::string encode(const std::vector<char32_t>& codepoints);

// Splits text into one string per codepoint.
std::vector<std::string> split(std::string_view text);

// Splits on ' ' and drops empty pieces.
std::vector<std::string> words(std::string_view text);

}  // namespace mlas::utf8

#endif  // MLAS_COMMON_UTF8_H_
