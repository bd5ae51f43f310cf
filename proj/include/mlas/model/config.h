// mlas/model/config.h
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

#ifndef MLAS_MODEL_CONFIG_H_
#define MLAS_MODEL_CONFIG_H_

#include <string>
#include <string_view>

#include <json.hpp>

namespace mlas {

enum class Variant { kJoint, kMtl, kCondEnc, kCondDec, kCondEncDec };

// "joint", "mtl", "cond-enc", "cond-dec", "cond-enc-dec".
std::string_view variantName(Variant variant);
Variant parseVariant(std::string_view name);  // throws ConfigError

inline bool conditionsEncoder(Variant v) {
  return v == Variant::kCondEnc || v == Variant::kCondEncDec;
}
inline bool conditionsDecoder(Variant v) {
  return v == Variant::kCondDec || v == Variant::kCondEncDec;
}

struct ModelConfig {
  int inputDim = 64;  // stacked frame width
  int encoderLayers = 2;
  int encoderWidth = 32;  // cells per direction
  int decoderLayers = 1;
  int decoderWidth = 48;
  int attentionWidth = 32;
  int charEmbeddingDim = 16;
  Variant variant = Variant::kJoint;
  int langEmbeddingDim = 5;  // cond-* only
  double lambda = 0.01;      // mtl only
  int vocabSize = 0;
  int numLanguages = 0;
  double initScale = 0.05;

  int encoderOutputWidth() const { return 2 * encoderWidth; }

  // Throws ConfigError for nonpositive dimensions or a negative lambda.
  void validate() const;

  // `lambda` is written only for mtl and `lang_embedding_dim` only for the
  // conditioned variants; fromJson() rejects them elsewhere, and rejects
  // unknown keys. Missing optional keys keep their defaults.
  nlohmann::json toJson() const;
  static ModelConfig fromJson(const nlohmann::json& doc);

  // Fields a variant does not use do not take part in equality.
  friend bool operator==(const ModelConfig& a, const ModelConfig& b) {
    return a.toJson() == b.toJson();
  }
};

}  // namespace mlas

#endif  // MLAS_MODEL_CONFIG_H_
