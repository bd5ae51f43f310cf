// mlas/inference/decoder.h
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

// Greedy and beam-search decoding. Scores are plain sums of per-step log
// posteriors; pad and sos are never proposed.

#ifndef MLAS_INFERENCE_DECODER_H_
#define MLAS_INFERENCE_DECODER_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mlas/corpus/features.h"
#include "mlas/langpack/vocab.h"
#include "mlas/model/las.h"

namespace mlas {

struct Hypothesis {
  // Ends with eos unless `truncated`.
  std::vector<int> tokens;
  double logProb = 0.0;
  // Hit the length limit without emitting eos.
  bool truncated = false;
  // Attention weights per step; filled only on request.
  std::vector<std::vector<double>> alignment;

  // Tokens without the trailing eos.
  std::vector<int> content() const;
};

struct BeamConfig {
  int beamWidth = 1;
  // Maximum decoding steps, eos included; 0 means 2 * K' + 10.
  int maxDecodeLength = 0;
  // Off by default. When on, ranking uses logProb / token count; logProb
  // itself is never normalized.
  bool lengthNormalization = false;
  bool keepAlignment = false;

  void validate() const;  // throws InvalidArgument
};

// 2 * stackedLength + 10.
int defaultMaxDecodeLength(std::size_t stackedLength);

// Argmax at every step, lowest token index on ties. `language` indexes the
// model's language list and is ignored by variants that do not condition.
Hypothesis greedyDecode(const LasModel& model, const FeatureSequence& stacked, int language,
                        const BeamConfig& config = {});

// Candidates from every live hypothesis are ranked together; the best
// beamWidth survive, and those ending in eos retire. Hypotheses still live
// at the length limit are kept and flagged. Returns at most beamWidth
// hypotheses, best first, ties broken by lexicographic token order.
std::vector<Hypothesis> beamSearch(const LasModel& model, const FeatureSequence& stacked,
                                   int language, const BeamConfig& config);

// Best hypothesis: greedyDecode() for width 1, else beamSearch().front().
Hypothesis decode(const LasModel& model, const FeatureSequence& stacked, int language,
                  const BeamConfig& config);

// Teacher-forced sum of log posteriors of `tokens` (eos included if
// present), the same quantity decoding reports.
double scoreTokens(const LasModel& model, const FeatureSequence& stacked, int language,
                   const std::vector<int>& tokens);

struct HypothesisRecord {
  std::string utteranceId;
  std::string text;
  double logProb = 0.0;
  bool truncated = false;

  friend bool operator==(const HypothesisRecord&, const HypothesisRecord&) = default;
};

HypothesisRecord toRecord(std::string utteranceId, const Hypothesis& hypothesis,
                          const UnionVocab& vocab);

// Tab-separated dump: a version line, a column header, then
// `id<TAB>text<TAB>log_prob<TAB>eos|max-length` per utterance.
struct HypothesisSet {
  std::vector<HypothesisRecord> records;

  const HypothesisRecord* find(std::string_view utteranceId) const;
  std::string serialize() const;
  static HypothesisSet parse(std::string_view text);  // throws FormatError

  friend bool operator==(const HypothesisSet&, const HypothesisSet&) = default;
};

}  // namespace mlas

#endif  // MLAS_INFERENCE_DECODER_H_
