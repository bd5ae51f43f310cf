// mlas/model/las.h
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

// Listen, attend and spell network with its multilingual variants.
//
// Parameter names:
//   enc.l<k>.fw.{W,b}, enc.l<k>.bw.{W,b}   encoder layer k (1-based)
//   att.W_h, att.W_d, att.b, att.v          additive attention
//   dec.l<k>.{W,b}                          decoder layer k
//   emb.char                                [vocab x char-embedding]
//   out.W, out.b                            softmax over [context ; d_t]
//   lid.W, lid.b                            mtl only
//   emb.lang.enc, emb.lang.dec              conditioned variants only

#ifndef MLAS_MODEL_LAS_H_
#define MLAS_MODEL_LAS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mlas/corpus/features.h"
#include "mlas/model/config.h"
#include "mlas/numerics/graph.h"
#include "mlas/numerics/lstm.h"

namespace mlas {

// h: K' x (2 * encoder width); row i is [forward_i ; backward_i] of the top
// layer. keys caches W_h h_i for every row.
struct EncoderStates {
  Value h;
  Value keys;
  std::size_t length = 0;
};

struct AttentionResult {
  Value alpha;    // [K']
  Value context;  // [2 * encoder width]
  Value scores;   // [K'], before the softmax
};

// Recurrent decoder state plus the context vector fed into the next step.
struct DecoderState {
  std::vector<LstmState> layers;
  Value context;
};

struct DecoderOutput {
  Value hidden;  // d_t, top layer
  std::vector<LstmState> layers;
};

// One training/evaluation pair: stacked features and the transcript tokens
// (no sos/eos). `language` indexes the model's language list.
struct Example {
  std::string id;
  FeatureSequence features;
  std::vector<int> tokens;
  int language = 0;
};

struct LossTerms {
  Value total;
  Value las;
  Value lid;  // valid for mtl only
  Value lidDistribution;
};

// Convex combination (1/(1+lambda)) las + (lambda/(1+lambda)) lid. Throws
// InvalidArgument for a negative lambda.
Value mtlLoss(Value las, Value lid, double lambda);
double mtlLoss(double las, double lid, double lambda);
// {1/(1+lambda), lambda/(1+lambda)}
std::pair<double, double> mtlCoefficients(double lambda);

class LasModel {
 public:
  // Throws ConfigError for an invalid config and ShapeError when a parameter
  // is missing or mis-shaped.
  LasModel(ModelConfig config, ParamSet params);

  // Weights uniform on [-initScale, initScale]; biases zero except the LSTM
  // forget gates.
  static LasModel initialize(const ModelConfig& config, std::uint64_t seed);
  static ParamSet initialParams(const ModelConfig& config, std::uint64_t seed);

  const ModelConfig& config() const { return config_; }
  const ParamSet& params() const { return params_; }
  ParamSet& params() { return params_; }

  // `language` must be given exactly when the variant conditions the
  // encoder; otherwise ConfigError. Throws ShapeError for a wrong feature
  // dimension.
  EncoderStates encode(Graph& g, const FeatureSequence& stacked,
                       std::optional<int> language) const;
  AttentionResult attend(Graph& g, Value decoderHidden, const EncoderStates& states) const;
  DecoderState initialDecoderState(Graph& g) const;
  // d_t = RNN([emb(prev) ; c_{t-1} ; lang?], d_{t-1}); `language` as for
  // encode() but for the decoder.
  DecoderOutput decoderStep(Graph& g, int prevToken, const DecoderState& state,
                            std::optional<int> language) const;
  // softmax(W_s [context ; hidden] + b_s)
  Value outputDistribution(Graph& g, Value context, Value hidden) const;

  // Teacher-forced sum of -log p(target_t) over tokens + eos, starting from
  // sos, zero context and zero state.
  Value lasLoss(Graph& g, const Example& example) const;
  // -log softmax(W_lang mean(h) + b_lang)[language]; mean over the valid
  // rows. Throws ConfigError unless the variant is mtl.
  std::pair<Value, Value> lidLoss(Graph& g, const EncoderStates& states, int language) const;
  // Objective of the variant: mtlLoss() for mtl, lasLoss() otherwise.
  LossTerms loss(Graph& g, const Example& example) const;

  std::optional<int> encoderLanguage(int language) const;
  std::optional<int> decoderLanguage(int language) const;

 private:
  void checkLanguage(std::optional<int> language, bool expected, const char* where) const;

  ModelConfig config_;
  ParamSet params_;
};

}  // namespace mlas

#endif  // MLAS_MODEL_LAS_H_
