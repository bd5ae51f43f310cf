// mlas/model/checkpoint.h
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

// Binary checkpoint:
//   8 bytes   "MLASCKPT"
//   uint32    format version (little-endian)
//   uint64    header length in bytes
//   header    UTF-8 JSON: model config, language registry, vocab
//             fingerprint, stacking, step, seed, parameter table
//   payload   every parameter in table order, row-major float64 LE

#ifndef MLAS_MODEL_CHECKPOINT_H_
#define MLAS_MODEL_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "mlas/langpack/registry.h"
#include "mlas/langpack/vocab.h"
#include "mlas/model/las.h"

namespace mlas {

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  ModelConfig config;
  LanguageRegistry languages;
  std::string vocabFingerprint;
  int stackWindow = kDefaultStackWindow;
  int stackStride = kDefaultStackStride;
  std::int64_t step = 0;
  std::uint64_t seed = 0;
  ParamSet params;

  // Fills the fingerprint from `languages`.
  static Checkpoint of(const LasModel& model, const LanguageRegistry& languages,
                       std::int64_t step, std::uint64_t seed, int window = kDefaultStackWindow,
                       int stride = kDefaultStackStride);

  UnionVocab vocab() const { return UnionVocab::build(languages); }
  LasModel model() const { return LasModel(config, params); }

  std::string serialize() const;
  // Throws FormatError for malformed bytes and FingerprintError when the
  // stored fingerprint disagrees with the stored languages.
  static Checkpoint parse(std::string_view bytes);
  void save(const std::filesystem::path& path) const;
  static Checkpoint load(const std::filesystem::path& path);
};

}  // namespace mlas

#endif  // MLAS_MODEL_CHECKPOINT_H_
