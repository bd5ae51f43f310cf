// mlas/corpus/features.cc
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

#include "mlas/corpus/features.h"

#include <algorithm>
#include <cmath>

#include "mlas/common/errors.h"

namespace mlas {

void FeatureSequence::validate() const {
  if (frames.rank() != 2 || frames.rows() == 0 || frames.cols() == 0) {
    throw InvalidArgument("feature sequence must be a non-empty T x F matrix, got " +
                          frames.shapeString());
  }
  if (!(framePeriodMs > 0.0) || !std::isfinite(framePeriodMs)) {
    throw InvalidArgument("frame period must be positive");
  }
  if (!frames.allFinite()) throw NonFiniteInput("feature sequence has a non-finite entry");
}

std::size_t stackedLength(std::size_t frames, int window, int stride) {
  if (window < 1 || stride < 1) {
    throw InvalidArgument("stacking window and stride must be >= 1");
  }
  const std::size_t w = static_cast<std::size_t>(window);
  return (std::max(frames, w) - w) / static_cast<std::size_t>(stride) + 1;
}

FeatureSequence stackFrames(const FeatureSequence& features, int window, int stride) {
  const std::size_t outLength = stackedLength(features.length(), window, stride);
  features.validate();
  const std::size_t t = features.length();
  const std::size_t f = features.dim();
  const std::size_t w = static_cast<std::size_t>(window);

  FeatureSequence out;
  out.framePeriodMs = features.framePeriodMs * stride;
  out.frames = Tensor::matrix(outLength, w * f);
  for (std::size_t k = 0; k < outLength; ++k) {
    auto dst = out.frames.row(k);
    for (std::size_t j = 0; j < w; ++j) {
      const std::size_t src = std::min(k * static_cast<std::size_t>(stride) + j, t - 1);
      auto row = features.frames.row(src);
      std::copy(row.begin(), row.end(), dst.begin() + j * f);
    }
  }
  return out;
}

Utterance concatUtterances(const Utterance& a, const Utterance& b,
                           std::span<const double> silenceFrame, double gapMs) {
  if (a.features.frames.rows() == 0 || b.features.frames.rows() == 0) {
    throw InvalidArgument("cannot concatenate an empty utterance");
  }
  a.features.validate();
  b.features.validate();
  const std::size_t f = a.features.dim();
  if (b.features.dim() != f || silenceFrame.size() != f) {
    throw ShapeError("concatenation needs equal feature dimensions");
  }
  if (a.features.framePeriodMs != b.features.framePeriodMs) {
    throw ShapeError("concatenation needs equal frame periods");
  }
  if (!(gapMs >= 0.0)) throw InvalidArgument("gap must be nonnegative");
  const auto gap = static_cast<std::size_t>(std::llround(gapMs / a.features.framePeriodMs));

  const std::size_t ta = a.features.length();
  const std::size_t tb = b.features.length();
  Utterance out;
  out.id = a.id + "+" + b.id;
  out.language = codeSwitchedLabel(a.language, b.language);
  out.transcript = a.transcript + " " + b.transcript;
  out.features.framePeriodMs = a.features.framePeriodMs;
  out.features.frames = Tensor::matrix(ta + gap + tb, f);
  auto dst = out.features.frames.values();
  auto it = std::copy(a.features.frames.values().begin(), a.features.frames.values().end(),
                      dst.begin());
  for (std::size_t i = 0; i < gap; ++i) {
    it = std::copy(silenceFrame.begin(), silenceFrame.end(), it);
  }
  std::copy(b.features.frames.values().begin(), b.features.frames.values().end(), it);

  const bool aligned = a.phoneAlignment.size() == ta && b.phoneAlignment.size() == tb;
  if (aligned) {
    out.phoneAlignment = a.phoneAlignment;
    out.phoneAlignment.insert(out.phoneAlignment.end(), gap, -1);
    out.phoneAlignment.insert(out.phoneAlignment.end(), b.phoneAlignment.begin(),
                              b.phoneAlignment.end());
  }
  return out;
}

}  // namespace mlas
