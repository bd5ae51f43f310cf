// mlas/tests/support/oracles.h
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

// Plain-loop reference implementations used as test oracles. They share no
// code with the graph ops and read parameters by name.

#ifndef MLAS_TESTS_SUPPORT_ORACLES_H_
#define MLAS_TESTS_SUPPORT_ORACLES_H_

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mlas/model/config.h"
#include "mlas/numerics/graph.h"

namespace mlas::oracle {

using Vec = std::vector<double>;

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline Vec softmax(const Vec& logits) {
  double top = logits[0];
  for (double v : logits) top = std::max(top, v);
  Vec out(logits.size());
  double z = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) z += out[i] = std::exp(logits[i] - top);
  for (double& v : out) v /= z;
  return out;
}

inline Vec join(const Vec& a, const Vec& b) {
  Vec out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline Vec rowOf(const Tensor& t, std::size_t r) {
  Vec out(t.cols());
  for (std::size_t c = 0; c < t.cols(); ++c) out[c] = t.at(r, c);
  return out;
}

// y = W x + b, element by element.
inline Vec affine(const Tensor& w, const Vec& x, const Tensor* b) {
  Vec out(w.rows(), 0.0);
  for (std::size_t r = 0; r < w.rows(); ++r) {
    double acc = b ? (*b)[r] : 0.0;
    for (std::size_t c = 0; c < w.cols(); ++c) acc += w.at(r, c) * x[c];
    out[r] = acc;
  }
  return out;
}

struct Lstm {
  Vec h;
  Vec c;
};

inline Lstm lstmStep(const Tensor& w, const Tensor& b, const Vec& x, const Lstm& prev) {
  const std::size_t width = prev.h.size();
  const Vec z = affine(w, join(x, prev.h), &b);
  Lstm out{Vec(width), Vec(width)};
  for (std::size_t k = 0; k < width; ++k) {
    const double i = sigmoid(z[k]);
    const double f = sigmoid(z[width + k]);
    const double g = std::tanh(z[2 * width + k]);
    const double o = sigmoid(z[3 * width + k]);
    out.c[k] = f * prev.c[k] + i * g;
    out.h[k] = o * std::tanh(out.c[k]);
  }
  return out;
}

inline std::vector<Vec> encode(const ParamSet& p, const ModelConfig& cfg,
                               std::vector<Vec> xs, std::optional<int> lang) {
  if (lang) {
    const Vec e = rowOf(p["emb.lang.enc"], *lang);
    for (auto& x : xs) x = join(x, e);
  }
  const std::size_t width = cfg.encoderWidth;
  for (int layer = 1; layer <= cfg.encoderLayers; ++layer) {
    const std::string prefix = "enc.l" + std::to_string(layer);
    std::vector<Vec> fw(xs.size());
    std::vector<Vec> bw(xs.size());
    Lstm s{Vec(width, 0.0), Vec(width, 0.0)};
    for (std::size_t t = 0; t < xs.size(); ++t) {
      s = lstmStep(p[prefix + ".fw.W"], p[prefix + ".fw.b"], xs[t], s);
      fw[t] = s.h;
    }
    s = {Vec(width, 0.0), Vec(width, 0.0)};
    for (std::size_t t = xs.size(); t-- > 0;) {
      s = lstmStep(p[prefix + ".bw.W"], p[prefix + ".bw.b"], xs[t], s);
      bw[t] = s.h;
    }
    for (std::size_t t = 0; t < xs.size(); ++t) xs[t] = join(fw[t], bw[t]);
  }
  return xs;
}

struct Attention {
  Vec scores;
  Vec alpha;
  Vec context;
};

// u_i = v . tanh(W_h h_i + W_d d + b_a), alpha = softmax(u), c = sum alpha_i h_i.
inline Attention attend(const ParamSet& p, const std::vector<Vec>& h, const Vec& d) {
  const Tensor& wh = p["att.W_h"];
  const Tensor& wd = p["att.W_d"];
  const Tensor& ba = p["att.b"];
  const Tensor& v = p["att.v"];
  Attention out;
  for (const auto& hi : h) {
    double u = 0.0;
    for (std::size_t a = 0; a < wh.rows(); ++a) {
      double acc = ba[a];
      for (std::size_t j = 0; j < hi.size(); ++j) acc += wh.at(a, j) * hi[j];
      for (std::size_t j = 0; j < d.size(); ++j) acc += wd.at(a, j) * d[j];
      u += v[a] * std::tanh(acc);
    }
    out.scores.push_back(u);
  }
  out.alpha = softmax(out.scores);
  out.context.assign(h[0].size(), 0.0);
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (std::size_t j = 0; j < h[i].size(); ++j) out.context[j] += out.alpha[i] * h[i][j];
  }
  return out;
}

// Teacher-forced -log P(tokens + eos | frames); sos = 1, eos = 2.
// Sum of log p(target_t) over exactly `targets` (no implicit eos), teacher
// forced from sos.
inline double sequenceLogProb(const ParamSet& p, const ModelConfig& cfg,
                              const std::vector<Vec>& frames, const std::vector<int>& targets,
                              int language) {
  const bool condEnc = cfg.variant == Variant::kCondEnc || cfg.variant == Variant::kCondEncDec;
  const bool condDec = cfg.variant == Variant::kCondDec || cfg.variant == Variant::kCondEncDec;
  const auto h = encode(p, cfg, frames, condEnc ? std::optional<int>(language) : std::nullopt);
  std::vector<Lstm> layers(cfg.decoderLayers,
                           Lstm{Vec(cfg.decoderWidth, 0.0), Vec(cfg.decoderWidth, 0.0)});
  Vec context(2 * cfg.encoderWidth, 0.0);
  int prev = 1;
  double logProb = 0.0;
  for (int target : targets) {
    Vec x = join(rowOf(p["emb.char"], prev), context);
    if (condDec) x = join(x, rowOf(p["emb.lang.dec"], language));
    for (int l = 0; l < cfg.decoderLayers; ++l) {
      const std::string prefix = "dec.l" + std::to_string(l + 1);
      layers[l] = lstmStep(p[prefix + ".W"], p[prefix + ".b"], x, layers[l]);
      x = layers[l].h;
    }
    const Attention att = attend(p, h, x);
    const Vec probs = softmax(affine(p["out.W"], join(att.context, x), &p["out.b"]));
    logProb += std::log(std::max(probs[target], 1e-12));
    context = att.context;
    prev = target;
  }
  return logProb;
}

inline double lasLoss(const ParamSet& p, const ModelConfig& cfg, const std::vector<Vec>& frames,
                      const std::vector<int>& tokens, int language) {
  std::vector<int> targets = tokens;
  targets.push_back(2);
  return -sequenceLogProb(p, cfg, frames, targets, language);
}

}  // namespace mlas::oracle

#endif  // MLAS_TESTS_SUPPORT_ORACLES_H_
