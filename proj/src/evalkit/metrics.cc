// mlas/evalkit/metrics.cc
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

#include "mlas/evalkit/metrics.h"

#include <cmath>
#include <cstdio>
#include <map>

#include "mlas/common/errors.h"
#include "mlas/common/utf8.h"
#include "mlas/model/examples.h"

namespace mlas {

namespace {

void requireCoverage(const Corpus& references, const HypothesisSet& hypotheses) {
  std::vector<std::string> missing;
  for (const auto& u : references.utterances) {
    if (!hypotheses.find(u.id)) missing.push_back(u.id);
  }
  if (!missing.empty()) throw CoverageError(missing);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::size_t wordErrors(std::string_view reference, std::string_view hypothesis) {
  return editDistance(utf8::words(reference), utf8::words(hypothesis));
}

std::size_t charErrors(std::string_view reference, std::string_view hypothesis) {
  return editDistance(utf8::decode(reference), utf8::decode(hypothesis));
}

const LanguageErrors* ErrorRateReport::find(std::string_view language) const {
  for (const auto& l : perLanguage) {
    if (l.language == language) return &l;
  }
  return nullptr;
}

std::string ErrorRateReport::table() const {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-16s %8s %8s %8s %9s %9s\n", "language", "utts", "words",
                "chars", "WER(%)", "CER(%)");
  out += line;
  for (const auto& l : perLanguage) {
    std::snprintf(line, sizeof(line), "%-16s %8zu %8zu %8zu %9.2f %9.2f\n", l.language.c_str(),
                  l.utterances, l.wordCount, l.charCount, 100.0 * l.wer, 100.0 * l.cer);
    out += line;
  }
  std::snprintf(line, sizeof(line), "%-16s %8s %8s %8s %9.2f %9.2f\n", "weighted avg", "", "", "",
                100.0 * weightedAverageWer, 100.0 * weightedAverageCer);
  out += line;
  return out;
}

std::string ErrorRateReport::csv() const {
  std::string out = "language,utterances,words,chars,wer,cer\n";
  std::size_t utts = 0, words = 0, chars = 0;
  for (const auto& l : perLanguage) {
    out += l.language + "," + std::to_string(l.utterances) + "," + std::to_string(l.wordCount) +
           "," + std::to_string(l.charCount) + "," + fixed(l.wer, 6) + "," + fixed(l.cer, 6) +
           "\n";
    utts += l.utterances;
    words += l.wordCount;
    chars += l.charCount;
  }
  out += "all," + std::to_string(utts) + "," + std::to_string(words) + "," +
         std::to_string(chars) + "," + fixed(weightedAverageWer, 6) + "," +
         fixed(weightedAverageCer, 6) + "\n";
  return out;
}

ErrorRateReport scoreCorpus(const Corpus& references, const HypothesisSet& hypotheses) {
  requireCoverage(references, hypotheses);
  ErrorRateReport report;
  std::map<std::string, std::size_t> slot;
  for (const auto& u : references.utterances) {
    auto [it, inserted] = slot.emplace(u.language, report.perLanguage.size());
    if (inserted) report.perLanguage.push_back({.language = u.language});
    LanguageErrors& l = report.perLanguage[it->second];
    const std::string& hyp = hypotheses.find(u.id)->text;
    ++l.utterances;
    l.wordCount += utf8::words(u.transcript).size();
    l.charCount += utf8::decode(u.transcript).size();
    l.wordErrors += wordErrors(u.transcript, hyp);
    l.charErrors += charErrors(u.transcript, hyp);
  }
  double werMass = 0.0, cerMass = 0.0;
  std::size_t words = 0, chars = 0;
  for (auto& l : report.perLanguage) {
    l.wer = ratio(l.wordErrors, l.wordCount);
    l.cer = ratio(l.charErrors, l.charCount);
    werMass += l.wer * static_cast<double>(l.wordCount);
    cerMass += l.cer * static_cast<double>(l.charCount);
    words += l.wordCount;
    chars += l.charCount;
  }
  report.weightedAverageWer = words == 0 ? 0.0 : werMass / static_cast<double>(words);
  report.weightedAverageCer = chars == 0 ? 0.0 : cerMass / static_cast<double>(chars);
  return report;
}

double ConfusionMatrix::at(std::string_view row, std::string_view column) const {
  const auto r = std::find(rows.begin(), rows.end(), row);
  const auto c = std::find(columns.begin(), columns.end(), column);
  if (r == rows.end() || c == columns.end()) {
    throw InvalidArgument("no confusion entry for (" + std::string(row) + ", " +
                          std::string(column) + ")");
  }
  return fractions[r - rows.begin()][c - columns.begin()];
}

double ConfusionMatrix::diagonal(std::string_view row) const { return at(row, row); }

std::string ConfusionMatrix::grid() const {
  std::size_t width = 6;
  for (const auto& c : columns) width = std::max(width, c.size());
  std::size_t rowWidth = 5;
  for (const auto& r : rows) rowWidth = std::max(rowWidth, r.size());
  auto pad = [](const std::string& s, std::size_t w) {
    return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
  };
  std::string out = pad("truth", rowWidth);
  for (const auto& c : columns) out += " " + pad(c, width);
  out += "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += pad(rows[i], rowWidth);
    for (double v : fractions[i]) {
      out += " " + pad(fixed(std::floor(v * 1000.0) / 1000.0, 3), width);
    }
    out += "\n";
  }
  return out;
}

std::string ConfusionMatrix::csv() const {
  std::string out = "truth";
  for (const auto& c : columns) out += "," + c;
  out += ",words\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += rows[i];
    for (double v : fractions[i]) out += "," + fixed(v, 9);
    out += "," + std::to_string(rowWords[i]) + "\n";
  }
  return out;
}

ConfusionMatrix confusionMatrix(const Corpus& references, const HypothesisSet& hypotheses,
                                const UnionVocab& vocab) {
  requireCoverage(references, hypotheses);
  ConfusionMatrix m;
  m.columns = vocab.languageIds();
  m.columns.emplace_back(kMixedLabel);
  m.columns.emplace_back(kOovLabel);
  std::map<std::string, std::size_t> rowOf;
  std::vector<std::vector<std::size_t>> counts;
  for (const auto& u : references.utterances) {
    if (!vocab.languageIndex(u.language)) {
      throw RegistryError("truth language '" + u.language + "' is not in the vocabulary");
    }
    auto [it, inserted] = rowOf.emplace(u.language, m.rows.size());
    if (inserted) {
      m.rows.push_back(u.language);
      counts.emplace_back(m.columns.size(), 0);
    }
    for (const auto& word : utf8::words(hypotheses.find(u.id)->text)) {
      const std::string label = classifyWord(word, vocab, u.language).str();
      const auto col = std::find(m.columns.begin(), m.columns.end(), label) - m.columns.begin();
      ++counts[it->second][col];
    }
  }
  for (const auto& row : counts) {
    std::size_t total = 0;
    for (std::size_t c : row) total += c;
    m.rowWords.push_back(total);
    std::vector<double> f;
    for (std::size_t c : row) f.push_back(ratio(c, total));
    m.fractions.push_back(std::move(f));
  }
  return m;
}

HypothesisSet decodeCorpus(const LasModel& model, const UnionVocab& vocab, const Corpus& corpus,
                           const BeamConfig& beam, int stackWindow, int stackStride) {
  HypothesisSet out;
  for (const auto& u : corpus.utterances) {
    const Example e = makeExample(u, vocab, stackWindow, stackStride);
    out.records.push_back(toRecord(u.id, decode(model, e.features, e.language, beam), vocab));
  }
  return out;
}

}  // namespace mlas
