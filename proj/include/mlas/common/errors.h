// mlas/common/errors.h
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

#ifndef MLAS_COMMON_ERRORS_H_
#define MLAS_COMMON_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlas {

// Every failure raised by the library derives from Error so that callers
// (the CLI in particular) can map classes of failure onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NonFiniteInput : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class NondeterminismError : public Error {
 public:
  using Error::Error;
};

class RegistryError : public Error {
 public:
  using Error::Error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

/// A character that has no token in the vocabulary.
class OovError : public Error {
 public:
  OovError(char32_t codepoint, std::size_t position);
  char32_t codepoint() const { return codepoint_; }
  std::size_t position() const { return position_; }

 private:
  char32_t codepoint_;
  std::size_t position_;
};

class GeneratorError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent configuration (corpus, model, experiment).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class DivergedError : public Error {
 public:
  DivergedError(std::int64_t step, double loss);
  std::int64_t step() const { return step_; }
  double loss() const { return loss_; }

 private:
  std::int64_t step_;
  double loss_;
};

/// Hypotheses missing for some reference utterances.
class CoverageError : public Error {
 public:
  explicit CoverageError(std::vector<std::string> missing);
  const std::vector<std::string>& missing() const { return missing_; }

 private:
  std::vector<std::string> missing_;
};

class FingerprintError : public Error {
 public:
  using Error::Error;
};

/// Operation requested on a model variant that does not support it.
class VariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace mlas

#endif  // MLAS_COMMON_ERRORS_H_
