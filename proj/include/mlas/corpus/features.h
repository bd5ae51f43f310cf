// mlas/corpus/features.h
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

#ifndef MLAS_CORPUS_FEATURES_H_
#define MLAS_CORPUS_FEATURES_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mlas/numerics/tensor.h"

namespace mlas {

inline constexpr int kDefaultStackWindow = 8;
inline constexpr int kDefaultStackStride = 3;
inline constexpr double kDefaultGapMs = 50.0;

// T x F frame matrix. T >= 1 and every entry finite.
struct FeatureSequence {
  Tensor frames;
  double framePeriodMs = 10.0;

  std::size_t length() const { return frames.rows(); }
  std::size_t dim() const { return frames.cols(); }

  // Throws InvalidArgument for T == 0 or a nonpositive frame period,
  // NonFiniteInput for a non-finite entry.
  void validate() const;

  friend bool operator==(const FeatureSequence&, const FeatureSequence&) = default;
};

struct Utterance {
  std::string id;
  std::string language;
  std::string transcript;
  FeatureSequence features;

  // Generator metadata, one phone index per frame. Empty when the utterance
  // was read back from disk.
  std::vector<int> phoneAlignment;
};

// Output frame k concatenates input frames [k*stride, k*stride + window);
// indices >= T read the final frame. Output length is
// floor((max(T, window) - window) / stride) + 1 and the frame period is
// multiplied by `stride`. Throws InvalidArgument for window or stride < 1.
FeatureSequence stackFrames(const FeatureSequence& features,
                            int window = kDefaultStackWindow,
                            int stride = kDefaultStackStride);

// Number of stacked frames stackFrames() produces for T input frames.
std::size_t stackedLength(std::size_t frames, int window = kDefaultStackWindow,
                          int stride = kDefaultStackStride);

inline std::string codeSwitchedLabel(const std::string& a, const std::string& b) {
  return "code-switched:" + a + "+" + b;
}

// a ++ round(gapMs / period) copies of `silenceFrame` ++ b. The transcript is
// joined with one space; gap frames carry phone alignment -1. Throws
// ShapeError for mismatched dimensions or frame periods and InvalidArgument
// for an empty utterance.
Utterance concatUtterances(const Utterance& a, const Utterance& b,
                           std::span<const double> silenceFrame,
                           double gapMs = kDefaultGapMs);

}  // namespace mlas

#endif  // MLAS_CORPUS_FEATURES_H_
