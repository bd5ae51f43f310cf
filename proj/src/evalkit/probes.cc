// mlas/evalkit/probes.cc
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

#include "mlas/evalkit/probes.h"

#include <algorithm>
#include <cstdio>
#include <map>

#include "mlas/common/errors.h"
#include "mlas/common/utf8.h"
#include "mlas/evalkit/metrics.h"

namespace mlas {

namespace {

std::vector<char32_t> graphemesOf(std::string_view text) {
  std::vector<char32_t> out;
  for (char32_t c : utf8::decode(text)) {
    if (c != U' ') out.push_back(c);
  }
  return out;
}

std::size_t commonSubsequence(const std::vector<char32_t>& a, const std::vector<char32_t>& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double coverage(std::string_view reference, const std::vector<char32_t>& output) {
  const auto ref = graphemesOf(reference);
  if (ref.empty()) return 0.0;
  return static_cast<double>(commonSubsequence(ref, output)) / static_cast<double>(ref.size());
}

std::vector<const Utterance*> takeUtterances(const ProbeInputs& inputs, const std::string& id) {
  if (!inputs.corpus) throw InvalidArgument("probe needs a corpus");
  if (!inputs.corpus->registry.find(id)) {
    throw ConfigError("language '" + id + "' is not in the corpus");
  }
  if (inputs.count < 1) throw ConfigError("probe count must be >= 1");
  auto all = inputs.corpus->split(inputs.split).ofLanguage(id);
  if (all.size() < static_cast<std::size_t>(inputs.count)) {
    throw ConfigError("language '" + id + "' has " + std::to_string(all.size()) + " " +
                      std::string(splitName(inputs.split)) + " utterances; probe needs " +
                      std::to_string(inputs.count));
  }
  all.resize(static_cast<std::size_t>(inputs.count));
  return all;
}

int vocabLanguage(const UnionVocab& vocab, const std::string& id) {
  const auto index = vocab.languageIndex(id);
  if (!index) throw ConfigError("language '" + id + "' is not in the model vocabulary");
  return static_cast<int>(*index);
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::vector<std::size_t> wordLengths(std::string_view text) {
  std::vector<std::size_t> out;
  for (const auto& w : utf8::words(text)) out.push_back(utf8::decode(w).size());
  return out;
}

}  // namespace

CodeSwitchReport codeSwitchProbe(const LasModel& model, const UnionVocab& vocab,
                                 const std::string& languageA, const std::string& languageB,
                                 const ProbeInputs& inputs) {
  const auto a = takeUtterances(inputs, languageA);
  const auto b = takeUtterances(inputs, languageB);
  const int language = vocabLanguage(vocab, languageA);
  vocabLanguage(vocab, languageB);
  const CorpusSplits& corpus = *inputs.corpus;

  CodeSwitchReport report;
  report.languageA = languageA;
  report.languageB = languageB;
  std::size_t single = 0, domA = 0, domB = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Utterance joined = concatUtterances(*a[i], *b[i], corpus.silenceFrame, kDefaultGapMs);
    const FeatureSequence stacked =
        stackFrames(joined.features, inputs.stackWindow, inputs.stackStride);
    const Hypothesis hyp = decode(model, stacked, language, inputs.beam);

    CodeSwitchRecord r;
    r.utteranceId = joined.id;
    r.reference = joined.transcript;
    r.hypothesis = vocab.decode(hyp.content());
    std::map<std::string, std::size_t> counts;
    const auto words = utf8::words(r.hypothesis);
    r.words = words.size();
    for (const auto& w : words) ++counts[classifyWord(w, vocab, languageA).str()];
    std::size_t best = 0;
    for (const auto& [label, n] : counts) {
      if (n > best) {
        best = n;
        r.dominantLabel = label;
      }
    }
    r.dominantShare = r.words == 0 ? 0.0 : static_cast<double>(best) / r.words;
    const auto output = graphemesOf(r.hypothesis);
    r.coverageA = coverage(a[i]->transcript, output);
    r.coverageB = coverage(b[i]->transcript, output);

    if (r.words > 0 && r.dominantShare >= kSingleScriptShare) ++single;
    if (r.dominantLabel == languageA) {
      ++domA;
    } else if (r.dominantLabel == languageB) {
      ++domB;
    }
    report.meanCoverageA += r.coverageA;
    report.meanCoverageB += r.coverageB;
    report.records.push_back(std::move(r));
  }
  const double n = static_cast<double>(report.records.size());
  report.singleScriptFraction = single / n;
  report.meanCoverageA /= n;
  report.meanCoverageB /= n;
  report.dominantA = domA / n;
  report.dominantB = domB / n;
  report.dominantOther = 1.0 - report.dominantA - report.dominantB;
  return report;
}

std::string CodeSwitchReport::tsv() const {
  std::string out =
      "utterance_id\treference\thypothesis\twords\tdominant\tdominant_share\tcoverage_a\t"
      "coverage_b\n";
  for (const auto& r : records) {
    out += r.utteranceId + "\t" + r.reference + "\t" + r.hypothesis + "\t" +
           std::to_string(r.words) + "\t" + (r.dominantLabel.empty() ? "-" : r.dominantLabel) +
           "\t" + fixed(r.dominantShare) + "\t" + fixed(r.coverageA) + "\t" + fixed(r.coverageB) +
           "\n";
  }
  return out;
}

std::string CodeSwitchReport::summary() const {
  return "code-switch probe " + languageA + "+" + languageB + " (" +
         std::to_string(records.size()) + " utterances)\n" +
         "  single-script fraction  " + fixed(singleScriptFraction) + "\n" +
         "  dominant " + languageA + "            " + fixed(dominantA) + "\n" +
         "  dominant " + languageB + "            " + fixed(dominantB) + "\n" +
         "  dominant other          " + fixed(dominantOther) + "\n" +
         "  mean coverage " + languageA + "       " + fixed(meanCoverageA) + "\n" +
         "  mean coverage " + languageB + "       " + fixed(meanCoverageB) + "\n";
}

MismatchedIdReport mismatchedIdProbe(const LasModel& model, const UnionVocab& vocab,
                                     const std::string& speech, const std::string& claimed,
                                     const ProbeInputs& inputs) {
  if (!conditionsEncoder(model.config().variant)) {
    throw VariantError("mismatched-id probe needs an encoder-conditioned model (cond-enc or "
                       "cond-enc-dec), got " +
                       std::string(variantName(model.config().variant)));
  }
  const auto source = takeUtterances(inputs, speech);
  const auto target = takeUtterances(inputs, claimed);
  const int language = vocabLanguage(vocab, claimed);
  vocabLanguage(vocab, speech);
  const auto idx = *vocab.languageIndex(claimed);

  MismatchedIdReport report;
  report.speechLanguage = speech;
  report.claimedLanguage = claimed;
  std::size_t graphemes = 0, inClaimed = 0, errors = 0, refChars = 0;
  for (std::size_t i = 0; i < source.size(); ++i) {
    if (wordLengths(source[i]->transcript) != wordLengths(target[i]->transcript)) {
      throw ConfigError("'" + speech + "' and '" + claimed +
                        "' are not a transliteration pair (slot " + std::to_string(i) +
                        " differs in word shape)");
    }
    const FeatureSequence stacked =
        stackFrames(source[i]->features, inputs.stackWindow, inputs.stackStride);
    const Hypothesis hyp = decode(model, stacked, language, inputs.beam);

    MismatchedIdRecord r;
    r.utteranceId = source[i]->id;
    r.reference = target[i]->transcript;
    const std::vector<int> content = hyp.content();
    r.hypothesis = vocab.decode(content);
    for (int token : content) {
      if (token == UnionVocab::kSpace) continue;
      ++r.graphemes;
      if (vocab.languageHasToken(idx, token)) ++r.claimedGraphemes;
    }
    r.charErrors = charErrors(r.reference, r.hypothesis);
    r.referenceChars = utf8::decode(r.reference).size();
    graphemes += r.graphemes;
    inClaimed += r.claimedGraphemes;
    errors += r.charErrors;
    refChars += r.referenceChars;
    report.records.push_back(std::move(r));
  }
  report.faithfulness = graphemes == 0 ? 0.0 : static_cast<double>(inClaimed) / graphemes;
  report.transliterationCer = refChars == 0 ? 0.0 : static_cast<double>(errors) / refChars;
  return report;
}

std::string MismatchedIdReport::tsv() const {
  std::string out =
      "utterance_id\treference\thypothesis\tgraphemes\tclaimed_graphemes\tchar_errors\t"
      "reference_chars\n";
  for (const auto& r : records) {
    out += r.utteranceId + "\t" + r.reference + "\t" + r.hypothesis + "\t" +
           std::to_string(r.graphemes) + "\t" + std::to_string(r.claimedGraphemes) + "\t" +
           std::to_string(r.charErrors) + "\t" + std::to_string(r.referenceChars) + "\n";
  }
  return out;
}

std::string MismatchedIdReport::summary() const {
  return "mismatched-id probe: " + speechLanguage + " speech decoded as " + claimedLanguage +
         " (" + std::to_string(records.size()) + " utterances)\n" +
         "  faithfulness            " + fixed(faithfulness) + "\n" +
         "  transliteration CER     " + fixed(transliterationCer) + "\n";
}

}  // namespace mlas
