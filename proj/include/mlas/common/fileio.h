// mlas/common/fileio.h
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

#ifndef MLAS_COMMON_FILEIO_H_
#define MLAS_COMMON_FILEIO_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace mlas {

// Whole-file binary IO. Both throw IoError.
std::string readFile(const std::filesystem::path& path);
void writeFile(const std::filesystem::path& path, std::string_view bytes);

// Shortest decimal text that parses back to the same double.
std::string formatDouble(double value);
// Throws FormatError unless the whole of `text` is one number.
double parseDouble(std::string_view text);

}  // namespace mlas

#endif  // MLAS_COMMON_FILEIO_H_
