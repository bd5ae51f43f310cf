// mlas/tests/unit/inference_test.cc
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

#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "mlas/common/errors.h"
#include "mlas/inference/decoder.h"
#include "mlas/langpack/vocab.h"
#include "mlas/model/las.h"
#include "support/oracles.h"

namespace mlas {
namespace {

constexpr int kEos = UnionVocab::kEos;

// pad, sos, eos, space and three graphemes: four non-eos output symbols.
ModelConfig searchConfig(Variant v = Variant::kJoint) {
  ModelConfig c;
  c.inputDim = 4;
  c.encoderLayers = 1;
  c.encoderWidth = 3;
  c.decoderLayers = 1;
  c.decoderWidth = 3;
  c.attentionWidth = 3;
  c.charEmbeddingDim = 3;
  c.variant = v;
  c.langEmbeddingDim = 2;
  c.vocabSize = 7;
  c.numLanguages = 2;
  c.initScale = 1.5;
  return c;
}

FeatureSequence randomFrames(std::size_t k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FeatureSequence f;
  f.frames = Tensor::matrix(k, 4);
  for (double& v : f.frames.values()) v = u(rng);
  return f;
}

std::vector<oracle::Vec> rowsOf(const FeatureSequence& f) {
  std::vector<oracle::Vec> out;
  for (std::size_t t = 0; t < f.length(); ++t) out.push_back(oracle::rowOf(f.frames, t));
  return out;
}

struct Scored {
  std::vector<int> tokens;
  double logProb;
};

// Every sequence of up to three non-eos symbols: shorter ones end in eos,
// length-three ones are cut at the limit.
Scored exhaustiveBest(const LasModel& model, const FeatureSequence& frames, int language) {
  const auto rows = rowsOf(frames);
  std::vector<std::vector<int>> prefixes{{}};
  Scored best{{}, -INFINITY};
  auto consider = [&](std::vector<int> tokens) {
    const double lp =
        oracle::sequenceLogProb(model.params(), model.config(), rows, tokens, language);
    if (lp > best.logProb || (lp == best.logProb && tokens < best.tokens)) {
      best = {std::move(tokens), lp};
    }
  };
  for (int len = 0; len <= 3; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& p : prefixes) {
      if (len < 3) {
        auto withEos = p;
        withEos.push_back(kEos);
        consider(withEos);
      } else {
        consider(p);
      }
      for (int t = 3; t < 7; ++t) {
        auto q = p;
        q.push_back(t);
        next.push_back(q);
      }
    }
    prefixes = std::move(next);
  }
  return best;
}

TEST(BeamSearchTest, Width64MatchesExhaustiveSearch) {
  std::mt19937_64 rng(41);
  int greedyMisses = 0;
  for (int draw = 0; draw < 50; ++draw) {
    const LasModel model = LasModel::initialize(searchConfig(), 1000 + draw);
    const FeatureSequence frames = randomFrames(2 + draw % 4, rng);
    BeamConfig beam;
    beam.beamWidth = 64;
    beam.maxDecodeLength = 3;
    const auto hyps = beamSearch(model, frames, 0, beam);
    const Scored best = exhaustiveBest(model, frames, 0);
    ASSERT_FALSE(hyps.empty());
    EXPECT_EQ(hyps.front().tokens, best.tokens) << "draw " << draw;
    EXPECT_NEAR(hyps.front().logProb, best.logProb, 1e-10) << "draw " << draw;
    EXPECT_EQ(hyps.front().truncated, best.tokens.empty() || best.tokens.back() != kEos);
    beam.beamWidth = 1;
    if (greedyDecode(model, frames, 0, beam).tokens != best.tokens) ++greedyMisses;
  }
  // The draws include inputs where greedy search is not optimal.
  EXPECT_GT(greedyMisses, 0);
}

TEST(BeamSearchTest, WidthOneEqualsGreedy) {
  std::mt19937_64 rng(5);
  for (Variant v : {Variant::kJoint, Variant::kCondEncDec}) {
    for (int draw = 0; draw < 20; ++draw) {
      const LasModel model = LasModel::initialize(searchConfig(v), 77 + draw);
      const FeatureSequence frames = randomFrames(1 + draw % 6, rng);
      BeamConfig beam;
      const Hypothesis g = greedyDecode(model, frames, draw % 2, beam);
      const auto b = beamSearch(model, frames, draw % 2, beam);
      ASSERT_EQ(b.size(), 1u);
      EXPECT_EQ(b[0].tokens, g.tokens);
      EXPECT_EQ(b[0].logProb, g.logProb);
      EXPECT_EQ(b[0].truncated, g.truncated);
      EXPECT_EQ(decode(model, frames, draw % 2, beam).tokens, g.tokens);
    }
  }
}

TEST(BeamSearchTest, TopScoreIsMonotoneInWidth) {
  std::mt19937_64 rng(9);
  for (int draw = 0; draw < 20; ++draw) {
    const LasModel model = LasModel::initialize(searchConfig(), 300 + draw);
    const FeatureSequence frames = randomFrames(3 + draw % 5, rng);
    double last = -INFINITY;
    for (int width : {1, 2, 4, 8}) {
      BeamConfig beam;
      beam.beamWidth = width;
      const double top = beamSearch(model, frames, 0, beam).front().logProb;
      EXPECT_GE(top, last - 1e-12) << "draw " << draw << " width " << width;
      last = top;
    }
  }
}

TEST(BeamSearchTest, ResultsAreRankedDistinctAndRescorable) {
  std::mt19937_64 rng(12);
  for (int draw = 0; draw < 10; ++draw) {
    const LasModel model = LasModel::initialize(searchConfig(Variant::kCondDec), 500 + draw);
    const FeatureSequence frames = randomFrames(4, rng);
    BeamConfig beam;
    beam.beamWidth = 6;
    const auto hyps = beamSearch(model, frames, 1, beam);
    ASSERT_LE(hyps.size(), 6u);
    std::set<std::vector<int>> seen;
    for (std::size_t i = 0; i < hyps.size(); ++i) {
      EXPECT_TRUE(seen.insert(hyps[i].tokens).second);
      if (i > 0) EXPECT_GE(hyps[i - 1].logProb, hyps[i].logProb);
      EXPECT_NEAR(scoreTokens(model, frames, 1, hyps[i].tokens), hyps[i].logProb, 1e-10);
      EXPECT_NEAR(oracle::sequenceLogProb(model.params(), model.config(), rowsOf(frames),
                                          hyps[i].tokens, 1),
                  hyps[i].logProb, 1e-10);
      for (int t : hyps[i].tokens) {
        EXPECT_NE(t, UnionVocab::kPad);
        EXPECT_NE(t, UnionVocab::kSos);
      }
    }
  }
}

TEST(DecoderTest, NeverEmitsPadOrSos) {
  LasModel model = LasModel::initialize(searchConfig(), 3);
  auto& b = model.params()["out.b"];
  b.values()[UnionVocab::kPad] = 50.0;
  b.values()[UnionVocab::kSos] = 50.0;
  std::mt19937_64 rng(1);
  const FeatureSequence frames = randomFrames(3, rng);
  BeamConfig beam;
  for (int width : {1, 3}) {
    beam.beamWidth = width;
    for (const auto& h : beamSearch(model, frames, 0, beam)) {
      for (int t : h.tokens) EXPECT_GE(t, UnionVocab::kEos);
    }
  }
}

TEST(DecoderTest, LengthLimitKeepsAndFlagsHypotheses) {
  LasModel model = LasModel::initialize(searchConfig(), 4);
  model.params()["out.b"].values()[kEos] = -60.0;
  std::mt19937_64 rng(2);
  const FeatureSequence frames = randomFrames(3, rng);
  BeamConfig beam;
  const Hypothesis g = greedyDecode(model, frames, 0, beam);
  EXPECT_TRUE(g.truncated);
  EXPECT_EQ(g.tokens.size(), static_cast<std::size_t>(defaultMaxDecodeLength(3)));
  EXPECT_EQ(defaultMaxDecodeLength(3), 16);
  beam.beamWidth = 4;
  beam.maxDecodeLength = 5;
  const auto hyps = beamSearch(model, frames, 0, beam);
  ASSERT_EQ(hyps.size(), 4u);
  for (const auto& h : hyps) {
    EXPECT_TRUE(h.truncated);
    EXPECT_EQ(h.tokens.size(), 5u);
    EXPECT_EQ(h.content(), h.tokens);
  }
}

TEST(DecoderTest, AlignmentRowsAreDistributions) {
  std::mt19937_64 rng(3);
  const LasModel model = LasModel::initialize(searchConfig(), 8);
  const FeatureSequence frames = randomFrames(5, rng);
  BeamConfig beam;
  beam.keepAlignment = true;
  for (int width : {1, 3}) {
    beam.beamWidth = width;
    const Hypothesis h = decode(model, frames, 0, beam);
    ASSERT_EQ(h.alignment.size(), h.tokens.size());
    for (const auto& row : h.alignment) {
      ASSERT_EQ(row.size(), 5u);
      double sum = 0.0;
      for (double a : row) sum += a;
      EXPECT_NEAR(sum, 1.0, 1e-9);
    }
  }
  const FeatureSequence one = randomFrames(1, rng);
  const Hypothesis h = decode(model, one, 0, beam);
  for (const auto& row : h.alignment) EXPECT_EQ(row, std::vector<double>{1.0});
}

TEST(DecoderTest, LengthNormalizationOnlyChangesRanking) {
  std::mt19937_64 rng(6);
  const LasModel model = LasModel::initialize(searchConfig(), 10);
  const FeatureSequence frames = randomFrames(4, rng);
  BeamConfig beam;
  beam.beamWidth = 8;
  beam.lengthNormalization = true;
  const auto hyps = beamSearch(model, frames, 0, beam);
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    EXPECT_NEAR(scoreTokens(model, frames, 0, hyps[i].tokens), hyps[i].logProb, 1e-10);
    if (i > 0) {
      EXPECT_GE(hyps[i - 1].logProb / hyps[i - 1].tokens.size(),
                hyps[i].logProb / hyps[i].tokens.size());
    }
  }
}

TEST(DecoderTest, RejectsBadConfig) {
  const LasModel model = LasModel::initialize(searchConfig(), 1);
  std::mt19937_64 rng(1);
  const FeatureSequence frames = randomFrames(2, rng);
  BeamConfig beam;
  beam.beamWidth = 0;
  EXPECT_THROW(beamSearch(model, frames, 0, beam), InvalidArgument);
  EXPECT_THROW(greedyDecode(model, frames, 0, beam), InvalidArgument);
  const LasModel cond = LasModel::initialize(searchConfig(Variant::kCondEnc), 1);
  EXPECT_THROW(greedyDecode(cond, frames, 2, {}), InvalidArgument);
}

TEST(HypothesisSetTest, RoundTripAndRejection) {
  HypothesisSet set;
  set.records.push_back({"hi-test-00000", "क ख", -1.25, false});
  set.records.push_back({"ta-test-00001", "", 1.0 / 3.0 - 4.0, true});
  const std::string text = set.serialize();
  const HypothesisSet back = HypothesisSet::parse(text);
  EXPECT_EQ(back, set);
  EXPECT_EQ(back.serialize(), text);
  ASSERT_NE(back.find("ta-test-00001"), nullptr);
  EXPECT_TRUE(back.find("ta-test-00001")->truncated);
  EXPECT_EQ(back.find("missing"), nullptr);
  EXPECT_THROW(HypothesisSet::parse("bogus\n"), FormatError);
  EXPECT_THROW(HypothesisSet::parse(text + "x\ty\t1\tdone\n"), FormatError);
  EXPECT_THROW(HypothesisSet::parse(text.substr(0, text.size() - 1)), FormatError);
}

TEST(HypothesisSetTest, RecordDropsEos) {
  LanguageSpec spec{"hi", "Hindi", {"क", "ख"}};
  const UnionVocab vocab = UnionVocab::build({spec});
  Hypothesis h;
  h.tokens = {4, UnionVocab::kSpace, 5, kEos};
  h.logProb = -2.0;
  const HypothesisRecord r = toRecord("u1", h, vocab);
  EXPECT_EQ(r.text, "क ख");
  EXPECT_FALSE(r.truncated);
}

}  // namespace
}  // namespace mlas
