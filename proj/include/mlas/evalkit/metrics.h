// mlas/evalkit/metrics.h
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

#ifndef MLAS_EVALKIT_METRICS_H_
#define MLAS_EVALKIT_METRICS_H_

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mlas/corpus/synthetic.h"
#include "mlas/inference/decoder.h"
#include "mlas/langpack/vocab.h"

namespace mlas {

// Levenshtein distance with unit costs; two-row dynamic program.
template <typename T>
std::size_t editDistance(std::span<const T> reference, std::span<const T> hypothesis) {
  std::vector<std::size_t> prev(hypothesis.size() + 1);
  std::vector<std::size_t> cur(hypothesis.size() + 1);
  for (std::size_t j = 0; j <= hypothesis.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= reference.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= hypothesis.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (reference[i - 1] == hypothesis[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[hypothesis.size()];
}

template <typename T>
std::size_t editDistance(const std::vector<T>& reference, const std::vector<T>& hypothesis) {
  return editDistance(std::span<const T>(reference), std::span<const T>(hypothesis));
}

// Over space-separated words / over codepoints, spaces included.
std::size_t wordErrors(std::string_view reference, std::string_view hypothesis);
std::size_t charErrors(std::string_view reference, std::string_view hypothesis);

struct LanguageErrors {
  std::string language;
  std::size_t utterances = 0;
  std::size_t wordCount = 0;   // reference words
  std::size_t charCount = 0;   // reference codepoints, spaces included
  std::size_t wordErrors = 0;
  std::size_t charErrors = 0;
  double wer = 0.0;
  double cer = 0.0;
};

struct ErrorRateReport {
  // In order of first appearance in the references.
  std::vector<LanguageErrors> perLanguage;
  // sum(wer_i * words_i) / sum(words_i)
  double weightedAverageWer = 0.0;
  // sum(cer_i * chars_i) / sum(chars_i)
  double weightedAverageCer = 0.0;

  const LanguageErrors* find(std::string_view language) const;
  // Fixed-width table for terminals.
  std::string table() const;
  // `language,utterances,words,chars,wer,cer` plus an `all` row.
  std::string csv() const;
};

// Throws CoverageError listing every reference id without a hypothesis.
ErrorRateReport scoreCorpus(const Corpus& references, const HypothesisSet& hypotheses);

// Rows: truth languages in reference order. Columns: every vocabulary
// language, then `mixed`, then `out-of-vocabulary`. Entries are fractions
// of the row's hypothesis words; a row without any words stays zero.
struct ConfusionMatrix {
  std::vector<std::string> rows;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> fractions;
  std::vector<std::size_t> rowWords;

  double at(std::string_view row, std::string_view column) const;
  // Entry in the row's own language column.
  double diagonal(std::string_view row) const;
  // Entries floored to 1e-3 and printed with three decimals; display only.
  std::string grid() const;
  // Full precision, comma-separated, header row of column labels.
  std::string csv() const;
};

// Each hypothesis word is labelled by classifyWord() against the
// utterance's truth language. Throws CoverageError for missing hypotheses
// and RegistryError when a truth language is not in `vocab`.
ConfusionMatrix confusionMatrix(const Corpus& references, const HypothesisSet& hypotheses,
                                const UnionVocab& vocab);

// Decodes every utterance of `corpus` with `model`; features are stacked
// with (window, stride) and the language index comes from `vocab`.
HypothesisSet decodeCorpus(const LasModel& model, const UnionVocab& vocab, const Corpus& corpus,
                           const BeamConfig& beam, int stackWindow = kDefaultStackWindow,
                           int stackStride = kDefaultStackStride);

}  // namespace mlas

#endif  // MLAS_EVALKIT_METRICS_H_
