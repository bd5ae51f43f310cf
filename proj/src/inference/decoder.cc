// mlas/inference/decoder.cc
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

#include "mlas/inference/decoder.h"

#include <algorithm>

#include "mlas/common/errors.h"
#include "mlas/common/fileio.h"
#include "mlas/numerics/ops.h"

namespace mlas {

namespace {

constexpr std::string_view kDumpVersion = "#mlas-hypotheses v1";
constexpr std::string_view kDumpHeader = "utterance_id\ttext\tlog_prob\tstatus";

// First token decoding may propose; everything from eos upward.
constexpr int kFirstEmittable = UnionVocab::kEos;

struct Posterior {
  std::vector<double> logProbs;  // indexed by token
  DecoderState next;
  std::vector<double> alpha;
};

class StepScorer {
 public:
  StepScorer(const LasModel& model, const FeatureSequence& stacked, int language)
      : model_(model),
        states_(model.encode(graph_, stacked, model.encoderLanguage(language))),
        decoderLanguage_(model.decoderLanguage(language)) {
    graph_.setGradEnabled(false);
  }

  DecoderState initial() { return model_.initialDecoderState(graph_); }

  Posterior step(int prev, const DecoderState& state) {
    DecoderOutput out = model_.decoderStep(graph_, prev, state, decoderLanguage_);
    AttentionResult att = model_.attend(graph_, out.hidden, states_);
    const Value p = model_.outputDistribution(graph_, att.context, out.hidden);
    Posterior post;
    const auto probs = p.data().values();
    post.logProbs.resize(probs.size());
    for (std::size_t k = 0; k < probs.size(); ++k) {
      post.logProbs[k] = -crossEntropy(probs, k);
    }
    post.next.layers = std::move(out.layers);
    post.next.context = att.context;
    const auto alpha = att.alpha.data().values();
    post.alpha.assign(alpha.begin(), alpha.end());
    return post;
  }

  std::size_t length() const { return states_.length; }

 private:
  const LasModel& model_;
  Graph graph_;
  EncoderStates states_;
  std::optional<int> decoderLanguage_;
};

int resolveMaxLength(const BeamConfig& config, const FeatureSequence& stacked) {
  return config.maxDecodeLength > 0 ? config.maxDecodeLength
                                    : defaultMaxDecodeLength(stacked.length());
}

double rankScore(const BeamConfig& config, double logProb, std::size_t tokens) {
  if (!config.lengthNormalization || tokens == 0) return logProb;
  return logProb / static_cast<double>(tokens);
}

// Better first: higher score, then lexicographically smaller tokens.
bool ranksBefore(double scoreA, const std::vector<int>& a, double scoreB,
                 const std::vector<int>& b) {
  if (scoreA != scoreB) return scoreA > scoreB;
  return a < b;
}

struct Live {
  Hypothesis hyp;
  DecoderState state;
};

}  // namespace

std::vector<int> Hypothesis::content() const {
  std::vector<int> out = tokens;
  if (!out.empty() && out.back() == UnionVocab::kEos) out.pop_back();
  return out;
}

void BeamConfig::validate() const {
  if (beamWidth < 1) throw InvalidArgument("beam width must be >= 1");
  if (maxDecodeLength < 0) throw InvalidArgument("max decode length must be >= 0");
}

int defaultMaxDecodeLength(std::size_t stackedLength) {
  return 2 * static_cast<int>(stackedLength) + 10;
}

Hypothesis greedyDecode(const LasModel& model, const FeatureSequence& stacked, int language,
                        const BeamConfig& config) {
  config.validate();
  const int maxLength = resolveMaxLength(config, stacked);
  StepScorer scorer(model, stacked, language);
  Hypothesis hyp;
  hyp.truncated = true;
  DecoderState state = scorer.initial();
  int prev = UnionVocab::kSos;
  for (int t = 0; t < maxLength; ++t) {
    Posterior post = scorer.step(prev, state);
    int best = kFirstEmittable;
    for (int k = kFirstEmittable + 1; k < static_cast<int>(post.logProbs.size()); ++k) {
      if (post.logProbs[k] > post.logProbs[best]) best = k;
    }
    hyp.tokens.push_back(best);
    hyp.logProb += post.logProbs[best];
    if (config.keepAlignment) hyp.alignment.push_back(std::move(post.alpha));
    if (best == UnionVocab::kEos) {
      hyp.truncated = false;
      break;
    }
    state = std::move(post.next);
    prev = best;
  }
  return hyp;
}

std::vector<Hypothesis> beamSearch(const LasModel& model, const FeatureSequence& stacked,
                                   int language, const BeamConfig& config) {
  config.validate();
  const int maxLength = resolveMaxLength(config, stacked);
  const auto width = static_cast<std::size_t>(config.beamWidth);
  StepScorer scorer(model, stacked, language);

  std::vector<Live> live(1);
  live[0].state = scorer.initial();
  std::vector<Hypothesis> finished;

  struct Candidate {
    std::size_t parent;
    int token;
    double logProb;
    double rank;
    std::vector<int> tokens;
  };

  for (int t = 0; t < maxLength && !live.empty(); ++t) {
    std::vector<Posterior> posteriors;
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < live.size(); ++i) {
      const auto& tokens = live[i].hyp.tokens;
      const int prev = tokens.empty() ? UnionVocab::kSos : tokens.back();
      posteriors.push_back(scorer.step(prev, live[i].state));
      const auto& lp = posteriors.back().logProbs;
      for (int k = kFirstEmittable; k < static_cast<int>(lp.size()); ++k) {
        Candidate c{i, k, live[i].hyp.logProb + lp[k], 0.0, tokens};
        c.tokens.push_back(k);
        c.rank = rankScore(config, c.logProb, c.tokens.size());
        candidates.push_back(std::move(c));
      }
    }
    const std::size_t keep = std::min(width, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                      candidates.end(), [](const Candidate& a, const Candidate& b) {
                        return ranksBefore(a.rank, a.tokens, b.rank, b.tokens);
                      });
    std::vector<Live> next;
    for (std::size_t j = 0; j < keep; ++j) {
      Candidate& c = candidates[j];
      Hypothesis hyp;
      hyp.tokens = std::move(c.tokens);
      hyp.logProb = c.logProb;
      if (config.keepAlignment) {
        hyp.alignment = live[c.parent].hyp.alignment;
        hyp.alignment.push_back(posteriors[c.parent].alpha);
      }
      if (c.token == UnionVocab::kEos) {
        finished.push_back(std::move(hyp));
      } else {
        next.push_back({std::move(hyp), posteriors[c.parent].next});
      }
    }
    live = std::move(next);
  }
  for (auto& l : live) {
    l.hyp.truncated = true;
    finished.push_back(std::move(l.hyp));
  }

  std::sort(finished.begin(), finished.end(), [&](const Hypothesis& a, const Hypothesis& b) {
    return ranksBefore(rankScore(config, a.logProb, a.tokens.size()), a.tokens,
                       rankScore(config, b.logProb, b.tokens.size()), b.tokens);
  });
  if (finished.size() > width) finished.resize(width);
  return finished;
}

Hypothesis decode(const LasModel& model, const FeatureSequence& stacked, int language,
                  const BeamConfig& config) {
  if (config.beamWidth == 1) return greedyDecode(model, stacked, language, config);
  return beamSearch(model, stacked, language, config).front();
}

double scoreTokens(const LasModel& model, const FeatureSequence& stacked, int language,
                   const std::vector<int>& tokens) {
  StepScorer scorer(model, stacked, language);
  DecoderState state = scorer.initial();
  int prev = UnionVocab::kSos;
  double total = 0.0;
  for (int token : tokens) {
    Posterior post = scorer.step(prev, state);
    if (token < 0 || token >= static_cast<int>(post.logProbs.size())) {
      throw InvalidArgument("token out of range");
    }
    total += post.logProbs[token];
    state = std::move(post.next);
    prev = token;
  }
  return total;
}

HypothesisRecord toRecord(std::string utteranceId, const Hypothesis& hypothesis,
                          const UnionVocab& vocab) {
  const std::vector<int> content = hypothesis.content();
  return {std::move(utteranceId), vocab.decode(content), hypothesis.logProb,
          hypothesis.truncated};
}

const HypothesisRecord* HypothesisSet::find(std::string_view utteranceId) const {
  for (const auto& r : records) {
    if (r.utteranceId == utteranceId) return &r;
  }
  return nullptr;
}

std::string HypothesisSet::serialize() const {
  std::string out;
  out += kDumpVersion;
  out += "\n";
  out += kDumpHeader;
  out += "\n";
  for (const auto& r : records) {
    if (r.utteranceId.find_first_of("\t\n") != std::string::npos ||
        r.text.find_first_of("\t\n") != std::string::npos) {
      throw InvalidArgument("hypothesis fields may not contain tabs or newlines");
    }
    out += r.utteranceId + "\t" + r.text + "\t" + formatDouble(r.logProb) + "\t" +
           (r.truncated ? "max-length" : "eos") + "\n";
  }
  return out;
}

HypothesisSet HypothesisSet::parse(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) throw FormatError("hypothesis dump must end with a newline");
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  if (lines.size() < 2 || lines[0] != kDumpVersion || lines[1] != kDumpHeader) {
    throw FormatError("hypothesis dump header mismatch");
  }
  HypothesisSet set;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (std::size_t tab; (tab = lines[i].find('\t', start)) != std::string_view::npos;) {
      cells.push_back(lines[i].substr(start, tab - start));
      start = tab + 1;
    }
    cells.push_back(lines[i].substr(start));
    if (cells.size() != 4) {
      throw FormatError("hypothesis dump line " + std::to_string(i + 1) + ": need 4 columns");
    }
    HypothesisRecord r;
    r.utteranceId = std::string(cells[0]);
    r.text = std::string(cells[1]);
    r.logProb = parseDouble(cells[2]);
    if (cells[3] == "eos") {
      r.truncated = false;
    } else if (cells[3] == "max-length") {
      r.truncated = true;
    } else {
      throw FormatError("hypothesis dump line " + std::to_string(i + 1) + ": bad status");
    }
    set.records.push_back(std::move(r));
  }
  return set;
}

}  // namespace mlas
