// mlas/model/config.cc
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

#include "mlas/model/config.h"

#include <cmath>

#include "mlas/common/errors.h"

namespace mlas {

namespace {

using nlohmann::json;

constexpr std::pair<Variant, std::string_view> kVariantNames[] = {
    {Variant::kJoint, "joint"},       {Variant::kMtl, "mtl"},
    {Variant::kCondEnc, "cond-enc"},  {Variant::kCondDec, "cond-dec"},
    {Variant::kCondEncDec, "cond-enc-dec"},
};

int positiveInt(const json& doc, const char* key) {
  if (!doc[key].is_number_integer()) {
    throw ConfigError(std::string("model.") + key + " must be an integer");
  }
  return doc[key].get<int>();
}

}  // namespace

std::string_view variantName(Variant variant) {
  for (const auto& [v, name] : kVariantNames) {
    if (v == variant) return name;
  }
  return "?";
}

Variant parseVariant(std::string_view name) {
  for (const auto& [v, n] : kVariantNames) {
    if (n == name) return v;
  }
  throw ConfigError("unknown model variant '" + std::string(name) + "'");
}

void ModelConfig::validate() const {
  const std::pair<const char*, int> dims[] = {
      {"input_dim", inputDim},           {"encoder_layers", encoderLayers},
      {"encoder_width", encoderWidth},   {"decoder_layers", decoderLayers},
      {"decoder_width", decoderWidth},   {"attention_width", attentionWidth},
      {"char_embedding_dim", charEmbeddingDim}, {"vocab_size", vocabSize},
      {"num_languages", numLanguages},
  };
  for (const auto& [name, value] : dims) {
    if (value < 1) throw ConfigError(std::string("model.") + name + " must be positive");
  }
  if (vocabSize < 5) throw ConfigError("model.vocab_size must cover the specials and a grapheme");
  if ((conditionsEncoder(variant) || conditionsDecoder(variant)) && langEmbeddingDim < 1) {
    throw ConfigError("model.lang_embedding_dim must be positive");
  }
  if (variant == Variant::kMtl && !(lambda >= 0.0 && std::isfinite(lambda))) {
    throw ConfigError("model.lambda must be a nonnegative number");
  }
  if (!(initScale > 0.0)) throw ConfigError("model.init_scale must be positive");
}

json ModelConfig::toJson() const {
  json doc;
  doc["input_dim"] = inputDim;
  doc["encoder_layers"] = encoderLayers;
  doc["encoder_width"] = encoderWidth;
  doc["decoder_layers"] = decoderLayers;
  doc["decoder_width"] = decoderWidth;
  doc["attention_width"] = attentionWidth;
  doc["char_embedding_dim"] = charEmbeddingDim;
  doc["variant"] = std::string(variantName(variant));
  if (conditionsEncoder(variant) || conditionsDecoder(variant)) {
    doc["lang_embedding_dim"] = langEmbeddingDim;
  }
  if (variant == Variant::kMtl) doc["lambda"] = lambda;
  doc["vocab_size"] = vocabSize;
  doc["num_languages"] = numLanguages;
  doc["init_scale"] = initScale;
  return doc;
}

ModelConfig ModelConfig::fromJson(const json& doc) {
  if (!doc.is_object()) throw ConfigError("model config must be an object");
  ModelConfig c;
  if (doc.contains("variant")) {
    if (!doc["variant"].is_string()) throw ConfigError("model.variant must be a string");
    c.variant = parseVariant(doc["variant"].get<std::string>());
  }
  const bool conditioned = conditionsEncoder(c.variant) || conditionsDecoder(c.variant);
  for (const auto& [key, value] : doc.items()) {
    if (key == "variant") continue;
    if (key == "lambda") {
      if (c.variant != Variant::kMtl) throw ConfigError("model.lambda is only valid for mtl");
      if (!value.is_number()) throw ConfigError("model.lambda must be a number");
      c.lambda = value.get<double>();
    } else if (key == "init_scale") {
      if (!value.is_number()) throw ConfigError("model.init_scale must be a number");
      c.initScale = value.get<double>();
    } else if (key == "lang_embedding_dim") {
      if (!conditioned) {
        throw ConfigError("model.lang_embedding_dim is only valid for conditioned variants");
      }
      c.langEmbeddingDim = positiveInt(doc, "lang_embedding_dim");
    } else if (key == "input_dim") {
      c.inputDim = positiveInt(doc, "input_dim");
    } else if (key == "encoder_layers") {
      c.encoderLayers = positiveInt(doc, "encoder_layers");
    } else if (key == "encoder_width") {
      c.encoderWidth = positiveInt(doc, "encoder_width");
    } else if (key == "decoder_layers") {
      c.decoderLayers = positiveInt(doc, "decoder_layers");
    } else if (key == "decoder_width") {
      c.decoderWidth = positiveInt(doc, "decoder_width");
    } else if (key == "attention_width") {
      c.attentionWidth = positiveInt(doc, "attention_width");
    } else if (key == "char_embedding_dim") {
      c.charEmbeddingDim = positiveInt(doc, "char_embedding_dim");
    } else if (key == "vocab_size") {
      c.vocabSize = positiveInt(doc, "vocab_size");
    } else if (key == "num_languages") {
      c.numLanguages = positiveInt(doc, "num_languages");
    } else {
      throw ConfigError("unknown model key '" + key + "'");
    }
  }
  return c;
}

}  // namespace mlas
