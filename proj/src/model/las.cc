// mlas/model/las.cc
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

#include "mlas/model/las.h"

#include <random>
#include <tuple>

#include "mlas/common/errors.h"
#include "mlas/langpack/vocab.h"
#include "mlas/numerics/ops.h"

namespace mlas {

namespace {

struct ParamShape {
  std::string name;
  std::size_t rows;
  std::size_t cols;  // 0 for vectors
};

std::string layerName(const char* stack, int layer, const char* suffix) {
  return std::string(stack) + ".l" + std::to_string(layer) + suffix;
}

std::vector<ParamShape> expectedShapes(const ModelConfig& c) {
  const std::size_t e = c.encoderWidth;
  const std::size_t d = c.decoderWidth;
  const std::size_t a = c.attentionWidth;
  const std::size_t v = c.vocabSize;
  const std::size_t n = c.numLanguages;
  const std::size_t lang = c.langEmbeddingDim;
  std::vector<ParamShape> out;
  for (int k = 1; k <= c.encoderLayers; ++k) {
    std::size_t in = k == 1 ? c.inputDim : 2 * e;
    if (k == 1 && conditionsEncoder(c.variant)) in += lang;
    for (const char* dir : {".fw", ".bw"}) {
      out.push_back({layerName("enc", k, dir) + ".W", 4 * e, in + e});
      out.push_back({layerName("enc", k, dir) + ".b", 4 * e, 0});
    }
  }
  out.push_back({"att.W_h", a, 2 * e});
  out.push_back({"att.W_d", a, d});
  out.push_back({"att.b", a, 0});
  out.push_back({"att.v", a, 0});
  out.push_back({"emb.char", v, static_cast<std::size_t>(c.charEmbeddingDim)});
  for (int k = 1; k <= c.decoderLayers; ++k) {
    std::size_t in = k == 1 ? c.charEmbeddingDim + 2 * e : d;
    if (k == 1 && conditionsDecoder(c.variant)) in += lang;
    out.push_back({layerName("dec", k, ".W"), 4 * d, in + d});
    out.push_back({layerName("dec", k, ".b"), 4 * d, 0});
  }
  out.push_back({"out.W", v, 2 * e + d});
  out.push_back({"out.b", v, 0});
  if (c.variant == Variant::kMtl) {
    out.push_back({"lid.W", n, 2 * e});
    out.push_back({"lid.b", n, 0});
  }
  if (conditionsEncoder(c.variant)) out.push_back({"emb.lang.enc", n, lang});
  if (conditionsDecoder(c.variant)) out.push_back({"emb.lang.dec", n, lang});
  return out;
}

LstmWeights lstmWeights(Graph& g, const ParamSet& params, const std::string& prefix) {
  return {g.param(params, prefix + ".W"), g.param(params, prefix + ".b")};
}

Value frameValue(Graph& g, const FeatureSequence& features, std::size_t t) {
  auto row = features.frames.row(t);
  return g.constant(Tensor::fromVector({row.begin(), row.end()}));
}

}  // namespace

std::pair<double, double> mtlCoefficients(double lambda) {
  if (!(lambda >= 0.0)) throw InvalidArgument("lambda must be nonnegative");
  return {1.0 / (1.0 + lambda), lambda / (1.0 + lambda)};
}

Value mtlLoss(Value las, Value lid, double lambda) {
  const auto [a, b] = mtlCoefficients(lambda);
  return op::add(op::scale(las, a), op::scale(lid, b));
}

double mtlLoss(double las, double lid, double lambda) {
  const auto [a, b] = mtlCoefficients(lambda);
  return a * las + b * lid;
}

LasModel::LasModel(ModelConfig config, ParamSet params)
    : config_(std::move(config)), params_(std::move(params)) {
  config_.validate();
  const auto shapes = expectedShapes(config_);
  if (params_.size() != shapes.size()) {
    throw ShapeError("model expects " + std::to_string(shapes.size()) + " parameters, got " +
                     std::to_string(params_.size()));
  }
  for (const auto& s : shapes) {
    auto idx = params_.find(s.name);
    if (!idx) throw ShapeError("missing parameter '" + s.name + "'");
    const Tensor& t = params_.value(*idx);
    const bool ok = s.cols == 0 ? (t.rank() == 1 && t.rows() == s.rows)
                                : (t.rank() == 2 && t.rows() == s.rows && t.cols() == s.cols);
    if (!ok) throw ShapeError("parameter '" + s.name + "' has shape " + t.shapeString());
  }
}

ParamSet LasModel::initialParams(const ModelConfig& config, std::uint64_t seed) {
  config.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-config.initScale, config.initScale);
  ParamSet params;
  for (const auto& s : expectedShapes(config)) {
    const bool lstm = s.name.starts_with("enc.") || s.name.starts_with("dec.");
    if (lstm) {
      if (s.name.ends_with(".W")) {
        const std::string prefix = s.name.substr(0, s.name.size() - 2);
        const std::size_t width = s.rows / 4;
        addLstmParams(params, prefix, s.cols - width, width, config.initScale, rng);
      }
      continue;
    }
    Tensor t = s.cols == 0 ? Tensor::vector(s.rows) : Tensor::matrix(s.rows, s.cols);
    const bool bias = s.name.ends_with(".b");
    if (!bias) {
      for (double& x : t.values()) x = uniform(rng);
    }
    params.add(s.name, std::move(t));
  }
  return params;
}

LasModel LasModel::initialize(const ModelConfig& config, std::uint64_t seed) {
  return LasModel(config, initialParams(config, seed));
}

void LasModel::checkLanguage(std::optional<int> language, bool expected,
                             const char* where) const {
  if (language.has_value() != expected) {
    throw ConfigError(std::string(where) + ": variant '" +
                      std::string(variantName(config_.variant)) +
                      (expected ? "' needs a language id" : "' takes no language id"));
  }
  if (language && (*language < 0 || *language >= config_.numLanguages)) {
    throw InvalidArgument(std::string(where) + ": language index out of range");
  }
}

std::optional<int> LasModel::encoderLanguage(int language) const {
  if (conditionsEncoder(config_.variant)) return language;
  return std::nullopt;
}

std::optional<int> LasModel::decoderLanguage(int language) const {
  if (conditionsDecoder(config_.variant)) return language;
  return std::nullopt;
}

EncoderStates LasModel::encode(Graph& g, const FeatureSequence& stacked,
                               std::optional<int> language) const {
  checkLanguage(language, conditionsEncoder(config_.variant), "encode");
  stacked.validate();
  if (stacked.dim() != static_cast<std::size_t>(config_.inputDim)) {
    throw ShapeError("encode: feature width " + std::to_string(stacked.dim()) +
                     ", model expects " + std::to_string(config_.inputDim));
  }
  const std::size_t k = stacked.length();
  std::vector<Value> xs(k);
  std::optional<Value> lang;
  if (language) lang = op::row(g.param(params_, "emb.lang.enc"), *language);
  for (std::size_t t = 0; t < k; ++t) {
    xs[t] = frameValue(g, stacked, t);
    if (lang) xs[t] = op::concat({xs[t], *lang});
  }

  const std::size_t width = config_.encoderWidth;
  for (int layer = 1; layer <= config_.encoderLayers; ++layer) {
    const LstmWeights fw = lstmWeights(g, params_, layerName("enc", layer, ".fw"));
    const LstmWeights bw = lstmWeights(g, params_, layerName("enc", layer, ".bw"));
    std::vector<Value> fwOut(k);
    std::vector<Value> bwOut(k);
    LstmState state = zeroLstmState(g, width);
    for (std::size_t t = 0; t < k; ++t) {
      state = lstmStep(xs[t], state, fw);
      fwOut[t] = state.hidden;
    }
    state = zeroLstmState(g, width);
    for (std::size_t t = k; t-- > 0;) {
      state = lstmStep(xs[t], state, bw);
      bwOut[t] = state.hidden;
    }
    for (std::size_t t = 0; t < k; ++t) xs[t] = op::concat({fwOut[t], bwOut[t]});
  }

  EncoderStates out;
  out.h = op::stackRows(xs);
  out.keys = op::matmulNT(out.h, g.param(params_, "att.W_h"));
  out.length = k;
  return out;
}

AttentionResult LasModel::attend(Graph& g, Value decoderHidden,
                                 const EncoderStates& states) const {
  const Value query =
      op::affine(g.param(params_, "att.W_d"), decoderHidden, g.param(params_, "att.b"));
  const Value hiddenScores = op::tanh(op::addRowBroadcast(states.keys, query));
  AttentionResult out;
  out.scores = op::matvec(hiddenScores, g.param(params_, "att.v"));
  out.alpha = op::softmax(out.scores);
  out.context = op::matvecT(states.h, out.alpha);
  return out;
}

DecoderState LasModel::initialDecoderState(Graph& g) const {
  DecoderState s;
  for (int layer = 0; layer < config_.decoderLayers; ++layer) {
    s.layers.push_back(zeroLstmState(g, config_.decoderWidth));
  }
  s.context = g.constant(Tensor::vector(config_.encoderOutputWidth()));
  return s;
}

DecoderOutput LasModel::decoderStep(Graph& g, int prevToken, const DecoderState& state,
                                    std::optional<int> language) const {
  checkLanguage(language, conditionsDecoder(config_.variant), "decoder step");
  if (prevToken < 0 || prevToken >= config_.vocabSize) {
    throw InvalidArgument("decoder step: token " + std::to_string(prevToken) + " out of range");
  }
  if (state.layers.size() != static_cast<std::size_t>(config_.decoderLayers)) {
    throw ShapeError("decoder step: wrong number of layer states");
  }
  std::vector<Value> parts = {op::row(g.param(params_, "emb.char"), prevToken), state.context};
  if (language) parts.push_back(op::row(g.param(params_, "emb.lang.dec"), *language));
  Value x = op::concat(parts);

  DecoderOutput out;
  for (int layer = 1; layer <= config_.decoderLayers; ++layer) {
    const LstmWeights w = lstmWeights(g, params_, layerName("dec", layer, ""));
    out.layers.push_back(lstmStep(x, state.layers[layer - 1], w));
    x = out.layers.back().hidden;
  }
  out.hidden = x;
  return out;
}

Value LasModel::outputDistribution(Graph& g, Value context, Value hidden) const {
  return op::softmax(op::affine(g.param(params_, "out.W"), op::concat({context, hidden}),
                                g.param(params_, "out.b")));
}

namespace {

Value teacherForcedLoss(const LasModel& model, Graph& g, const EncoderStates& states,
                        const Example& example) {
  const int vocab = model.config().vocabSize;
  std::vector<int> targets = example.tokens;
  targets.push_back(UnionVocab::kEos);
  for (int t : targets) {
    if (t < 0 || t >= vocab) throw InvalidArgument("target token out of range");
  }
  const auto language = model.decoderLanguage(example.language);
  DecoderState state = model.initialDecoderState(g);
  int prev = UnionVocab::kSos;
  Value total;
  for (int target : targets) {
    DecoderOutput step = model.decoderStep(g, prev, state, language);
    AttentionResult att = model.attend(g, step.hidden, states);
    Value term = op::crossEntropy(model.outputDistribution(g, att.context, step.hidden),
                                  static_cast<std::size_t>(target));
    total = total.valid() ? op::add(total, term) : term;
    state.layers = std::move(step.layers);
    state.context = att.context;
    prev = target;
  }
  return total;
}

}  // namespace

Value LasModel::lasLoss(Graph& g, const Example& example) const {
  const EncoderStates states = encode(g, example.features, encoderLanguage(example.language));
  return teacherForcedLoss(*this, g, states, example);
}

std::pair<Value, Value> LasModel::lidLoss(Graph& g, const EncoderStates& states,
                                          int language) const {
  if (config_.variant != Variant::kMtl) {
    throw ConfigError("language-id loss needs the mtl variant");
  }
  if (language < 0 || language >= config_.numLanguages) {
    throw InvalidArgument("language index out of range");
  }
  const Value mean = op::meanRows(states.h, states.length);
  const Value p = op::softmax(
      op::affine(g.param(params_, "lid.W"), mean, g.param(params_, "lid.b")));
  return {op::crossEntropy(p, static_cast<std::size_t>(language)), p};
}

LossTerms LasModel::loss(Graph& g, const Example& example) const {
  const EncoderStates states = encode(g, example.features, encoderLanguage(example.language));
  LossTerms out;
  out.las = teacherForcedLoss(*this, g, states, example);
  if (config_.variant == Variant::kMtl) {
    std::tie(out.lid, out.lidDistribution) = lidLoss(g, states, example.language);
    out.total = mtlLoss(out.las, out.lid, config_.lambda);
  } else {
    out.total = out.las;
  }
  return out;
}

}  // namespace mlas
