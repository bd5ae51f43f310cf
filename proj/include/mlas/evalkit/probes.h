// mlas/evalkit/probes.h
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

// Behavioural probes on decoded output: code-switched inputs and speech
// decoded under another language's id.

#ifndef MLAS_EVALKIT_PROBES_H_
#define MLAS_EVALKIT_PROBES_H_

#include <cstddef>
#include <string>
#include <vector>

#include "mlas/corpus/synthetic.h"
#include "mlas/inference/decoder.h"
#include "mlas/langpack/vocab.h"
#include "mlas/model/las.h"

namespace mlas {

// Share of hypothesis words carrying the dominant label that makes an
// output count as single-script.
inline constexpr double kSingleScriptShare = 0.95;

struct ProbeInputs {
  const CorpusSplits* corpus = nullptr;
  Split split = Split::kTest;
  int count = 0;
  BeamConfig beam;
  int stackWindow = kDefaultStackWindow;
  int stackStride = kDefaultStackStride;
};

struct CodeSwitchRecord {
  std::string utteranceId;  // "<a id>+<b id>"
  std::string reference;
  std::string hypothesis;
  std::size_t words = 0;
  // Most frequent classifyWord() label, ties to the earlier column.
  std::string dominantLabel;
  double dominantShare = 0.0;
  // Fraction of each segment's non-space reference graphemes recovered, in
  // order, by the output (longest common subsequence).
  double coverageA = 0.0;
  double coverageB = 0.0;
};

struct CodeSwitchReport {
  std::string languageA;
  std::string languageB;
  std::vector<CodeSwitchRecord> records;
  // Outputs with at least one word whose dominant share >= 0.95.
  double singleScriptFraction = 0.0;
  double meanCoverageA = 0.0;
  double meanCoverageB = 0.0;
  // Fractions of outputs whose dominant label is A, B, or anything else.
  double dominantA = 0.0;
  double dominantB = 0.0;
  double dominantOther = 0.0;

  std::string tsv() const;
  std::string summary() const;
};

// Pairs the i-th utterance of A with the i-th of B in the chosen split,
// joins them with a 50 ms silence gap and decodes the result. Conditioned
// models are given A's id. Throws ConfigError when either language has
// fewer than `count` utterances or count < 1.
CodeSwitchReport codeSwitchProbe(const LasModel& model, const UnionVocab& vocab,
                                 const std::string& languageA, const std::string& languageB,
                                 const ProbeInputs& inputs);

struct MismatchedIdRecord {
  std::string utteranceId;
  std::string reference;  // claimed-language rendering
  std::string hypothesis;
  std::size_t graphemes = 0;       // non-space output codepoints
  std::size_t claimedGraphemes = 0;  // of which in the claimed charset
  std::size_t charErrors = 0;
  std::size_t referenceChars = 0;
};

struct MismatchedIdReport {
  std::string speechLanguage;
  std::string claimedLanguage;
  std::vector<MismatchedIdRecord> records;
  // Pooled over records: claimed graphemes / graphemes (0 if no output).
  double faithfulness = 0.0;
  // Pooled: char errors / reference chars, spaces included.
  double transliterationCer = 0.0;

  std::string tsv() const;
  std::string summary() const;
};

// Decodes the first `count` utterances of `speech` under the id of
// `claimed`. The reference for slot i is the claimed language's utterance
// in the same slot, which for a transliteration pair is the same word
// sequence in the claimed script; slots whose word shapes disagree raise
// ConfigError. Throws VariantError unless the variant conditions the
// encoder, ConfigError for unknown languages or too few utterances.
MismatchedIdReport mismatchedIdProbe(const LasModel& model, const UnionVocab& vocab,
                                     const std::string& speech, const std::string& claimed,
                                     const ProbeInputs& inputs);

}  // namespace mlas

#endif  // MLAS_EVALKIT_PROBES_H_
