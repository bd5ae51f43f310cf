// mlas/tests/unit/trainer_test.cc
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
#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "mlas/common/errors.h"
#include "mlas/common/fileio.h"
#include "mlas/common/hash.h"
#include "mlas/corpus/synthetic.h"
#include "mlas/inference/decoder.h"
#include "mlas/langpack/vocab.h"
#include "mlas/model/checkpoint.h"
#include "mlas/model/examples.h"
#include "mlas/trainer/trainer.h"

namespace mlas {
namespace {

ParamSet twoParams(double x, double y) {
  ParamSet p;
  p.add("w", Tensor::fromVector({x, y}));
  return p;
}

TrainConfig plainConfig() {
  TrainConfig c;
  c.l2 = 0.0;
  c.noiseStartStep = -1;
  return c;
}

// 0.5 * (a x^2 + b y^2)
BatchObjective bowl(double a, double b) {
  return [a, b](const ParamSet& at, GradSet& grads) {
    const auto w = at.value(0).values();
    grads[0].values()[0] += a * w[0];
    grads[0].values()[1] += b * w[1];
    return 0.5 * (a * w[0] * w[0] + b * w[1] * w[1]);
  };
}

CorpusConfig smallCorpus(int train, int validation, int test) {
  CorpusConfig c = CorpusConfig::toy();
  for (auto& l : c.languages) {
    l.trainCount = train;
    l.validationCount = validation;
    l.testCount = test;
  }
  return c;
}

ModelConfig smallModel() {
  ModelConfig c;
  c.encoderLayers = 1;
  c.encoderWidth = 8;
  c.decoderWidth = 8;
  c.attentionWidth = 8;
  c.charEmbeddingDim = 4;
  return c;
}

std::filesystem::path scratchDir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("mlas_trainer_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

TEST(TrainConfigTest, LearningRateSchedule) {
  TrainConfig c;
  c.initialLr = 0.4;
  EXPECT_DOUBLE_EQ(c.learningRate(0), 0.4);
  EXPECT_DOUBLE_EQ(c.learningRate(500), 0.4 * 0.98);
  EXPECT_DOUBLE_EQ(c.learningRate(5000), 0.4 * std::pow(0.98, 10));
  for (std::int64_t s = 1; s <= 20000; ++s) {
    ASSERT_LE(c.learningRate(s), c.learningRate(s - 1));
  }
}

TEST(TrainConfigTest, NoiseWindow) {
  TrainConfig c;
  c.noiseStartStep = 10;
  EXPECT_FALSE(c.noiseActive(9));
  EXPECT_TRUE(c.noiseActive(10));
  c.noiseStartStep = -1;
  EXPECT_FALSE(c.noiseActive(1000000));
}

TEST(TrainConfigTest, JsonRoundTripAndStrictness) {
  TrainConfig c;
  c.initialLr = 0.25;
  c.maxSteps = 77;
  c.seed = 9;
  const TrainConfig back = TrainConfig::fromJson(c.toJson());
  EXPECT_EQ(back.toJson(), c.toJson());
  EXPECT_THROW(TrainConfig::fromJson({{"learning_rate", 0.1}}), ConfigError);
  EXPECT_THROW(TrainConfig::fromJson({{"max_steps", "many"}}), ConfigError);
  EXPECT_THROW(TrainConfig::fromJson({{"seed", -1}}), ConfigError);
  TrainConfig bad;
  bad.batchSize = 0;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = TrainConfig{};
  bad.initialLr = 0.0;
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(TrainStepTest, ZeroGradientWithoutPenaltyLeavesParams) {
  TrainState s;
  s.params = twoParams(0.3, -0.7);
  const ParamSet before = s.params;
  const auto r = trainStep(
      s, [](const ParamSet&, GradSet&) { return 1.5; }, plainConfig());
  EXPECT_EQ(s.params.value(0).values()[0], before.value(0).values()[0]);
  EXPECT_EQ(s.params.value(0).values()[1], before.value(0).values()[1]);
  EXPECT_EQ(r.loss, 1.5);
  EXPECT_EQ(s.step, 1);
}

TEST(TrainStepTest, NoiseIsNeverPersisted) {
  TrainConfig c = plainConfig();
  c.noiseStartStep = 0;
  c.noiseStddev = 0.5;
  TrainState s;
  s.params = twoParams(0.3, -0.7);
  const ParamSet before = s.params;
  double seenDistance = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto r = trainStep(
        s,
        [&](const ParamSet& at, GradSet&) {
          const auto a = at.value(0).values();
          seenDistance += std::abs(a[0] - 0.3) + std::abs(a[1] + 0.7);
          return 0.0;
        },
        c);
    EXPECT_TRUE(r.noisy);
  }
  EXPECT_GT(seenDistance, 1.0);  // the objective did see perturbed weights
  EXPECT_EQ(s.params.value(0).values()[0], before.value(0).values()[0]);
  EXPECT_EQ(s.params.value(0).values()[1], before.value(0).values()[1]);
}

TEST(TrainStepTest, QuadraticBowlFollowsClosedForm) {
  const double a = 1.0, b = 4.0;
  TrainConfig c = plainConfig();
  c.initialLr = 0.2;  // stability bound is 2 / 4
  TrainState s;
  s.params = twoParams(1.0, 0.5);
  double x = 1.0, y = 0.5;
  double last = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100; ++i) {
    const double lr = c.initialLr * std::pow(c.decayRate, i / 500.0);
    const auto r = trainStep(s, bowl(a, b), c);
    EXPECT_LT(r.loss, last);
    last = r.loss;
    x *= 1.0 - lr * a;
    y *= 1.0 - lr * b;
    ASSERT_NEAR(s.params.value(0).values()[0], x, 1e-12);
    ASSERT_NEAR(s.params.value(0).values()[1], y, 1e-12);
  }
}

TEST(TrainStepTest, PenaltyEntersLossAndUpdate) {
  TrainConfig c = plainConfig();
  c.l2 = 0.01;
  c.initialLr = 0.1;
  TrainState s;
  s.params = twoParams(2.0, -3.0);
  const auto r = trainStep(
      s, [](const ParamSet&, GradSet&) { return 0.25; }, c);
  EXPECT_DOUBLE_EQ(r.loss, 0.25 + 0.01 * (4.0 + 9.0));
  EXPECT_DOUBLE_EQ(s.params.value(0).values()[0], 2.0 * (1.0 - 2.0 * 0.1 * 0.01));
  EXPECT_DOUBLE_EQ(s.params.value(0).values()[1], -3.0 * (1.0 - 2.0 * 0.1 * 0.01));
}

TEST(TrainStepTest, PenaltyOnFrozenModelMatchesSumOfSquares) {
  ModelConfig mc = smallModel();
  mc.vocabSize = 7;
  mc.numLanguages = 1;
  const LasModel model = LasModel::initialize(mc, 3);
  double squares = 0.0;
  for (std::size_t i = 0; i < model.params().size(); ++i) {
    for (double v : model.params().value(i).values()) squares += v * v;
  }
  TrainConfig c = plainConfig();
  c.l2 = 1e-6;
  TrainState s;
  s.params = model.params();
  const auto r = trainStep(
      s, [](const ParamSet&, GradSet&) { return 0.0; }, c);
  EXPECT_NEAR(r.loss, 1e-6 * squares, 1e-18);
}

TEST(TrainStepTest, ClipsGradientNorm) {
  TrainConfig c = plainConfig();
  c.initialLr = 1.0;
  c.clipNorm = 5.0;
  TrainState s;
  s.params = twoParams(0.0, 0.0);
  const auto r = trainStep(
      s,
      [](const ParamSet&, GradSet& g) {
        g[0].values()[0] = 6.0;
        g[0].values()[1] = 8.0;
        return 0.0;
      },
      c);
  EXPECT_DOUBLE_EQ(r.gradNorm, 10.0);
  EXPECT_DOUBLE_EQ(s.params.value(0).values()[0], -3.0);
  EXPECT_DOUBLE_EQ(s.params.value(0).values()[1], -4.0);
}

TEST(TrainStepTest, NonFiniteLossDiverges) {
  TrainState s;
  s.params = twoParams(1.0, 1.0);
  s.step = 42;
  try {
    trainStep(
        s, [](const ParamSet&, GradSet&) { return std::nan(""); }, plainConfig());
    FAIL() << "expected DivergedError";
  } catch (const DivergedError& e) {
    EXPECT_EQ(e.step(), 42);
  }
  EXPECT_EQ(s.step, 42);
  EXPECT_EQ(s.params.value(0).values()[0], 1.0);
  EXPECT_THROW(trainStep(
                   s,
                   [](const ParamSet&, GradSet& g) {
                     g[0].values()[0] = INFINITY;
                     return 0.0;
                   },
                   plainConfig()),
               DivergedError);
  EXPECT_THROW(trainStep(
                   s,
                   [](const ParamSet&, GradSet&) -> double {
                     throw NonFiniteInput("softmax input is not finite");
                   },
                   plainConfig()),
               DivergedError);
  EXPECT_EQ(s.step, 42);
}

TEST(TrainingLogTest, CsvRoundTrip) {
  TrainingLog log;
  log.rows.push_back({250, 12.5, 13.25, 0.5});
  log.rows.push_back({500, 0.1 + 0.2, 1.0 / 3.0, 0.49});
  const std::string text = log.serialize();
  EXPECT_EQ(text.substr(0, text.find('\n')), "step,train_loss,val_loss,lr");
  const TrainingLog back = TrainingLog::parse(text);
  ASSERT_EQ(back.rows.size(), 2u);
  EXPECT_EQ(back.rows[1].trainLoss, 0.1 + 0.2);
  EXPECT_EQ(back.rows[1].validationLoss, 1.0 / 3.0);
  EXPECT_EQ(back.serialize(), text);
  EXPECT_THROW(TrainingLog::parse("step,loss\n"), FormatError);
  EXPECT_THROW(TrainingLog::parse("step,train_loss,val_loss,lr\n1,2,3\n"), FormatError);
}

TEST(BatchSamplerTest, EpochCoversEveryExampleOnce) {
  std::vector<Example> examples(21);
  for (std::size_t i = 0; i < examples.size(); ++i) {
    examples[i].id = std::to_string(i);
    examples[i].features.frames = Tensor::matrix(1 + i % 5, 2);
  }
  BatchSampler sampler(examples, 4, 5);
  std::vector<int> seen(examples.size(), 0);
  std::size_t drawn = 0;
  while (drawn < examples.size()) {
    const auto batch = sampler.next();
    EXPECT_LE(batch.size(), 4u);
    for (const Example* e : batch) ++seen[e - examples.data()];
    drawn += batch.size();
  }
  EXPECT_EQ(sampler.epoch(), 0);
  for (int n : seen) EXPECT_EQ(n, 1);
  sampler.next();
  EXPECT_EQ(sampler.epoch(), 1);
}

TEST(RunTrainingTest, ZeroStepsReturnsInitialization) {
  const CorpusSplits corpus = buildCorpus(smallCorpus(3, 2, 1), 4);
  const UnionVocab vocab = UnionVocab::build(corpus.registry);
  TrainConfig c;
  c.maxSteps = 0;
  c.seed = 8;
  const auto run = runTraining(makeExamples(corpus.train, vocab),
                               makeExamples(corpus.validation, vocab), smallModel(), c,
                               corpus.registry);
  EXPECT_TRUE(run.log.rows.empty());
  ModelConfig full = smallModel();
  full.vocabSize = static_cast<int>(vocab.size());
  full.numLanguages = 3;
  const ParamSet init = LasModel::initialParams(full, deriveSeed(8, "init"));
  ASSERT_EQ(run.best.params().size(), init.size());
  for (std::size_t i = 0; i < init.size(); ++i) {
    EXPECT_EQ(run.best.params().value(i), init.value(i));
  }
}

TEST(RunTrainingTest, EmptySplitsAndVocabMismatchAreConfigErrors) {
  const CorpusSplits corpus = buildCorpus(smallCorpus(2, 1, 1), 4);
  const UnionVocab vocab = UnionVocab::build(corpus.registry);
  const auto train = makeExamples(corpus.train, vocab);
  EXPECT_THROW(runTraining({}, train, smallModel(), {}, corpus.registry), ConfigError);
  EXPECT_THROW(runTraining(train, {}, smallModel(), {}, corpus.registry), ConfigError);
  ModelConfig wrong = smallModel();
  wrong.vocabSize = 5;
  EXPECT_THROW(runTraining(train, train, wrong, {}, corpus.registry), ConfigError);
}

TEST(RunTrainingTest, NoiseFreeRunsAreBitIdenticalAndPersisted) {
  const CorpusSplits corpus = buildCorpus(smallCorpus(6, 2, 1), 4);
  const UnionVocab vocab = UnionVocab::build(corpus.registry);
  const auto train = makeExamples(corpus.train, vocab);
  const auto validation = makeExamples(corpus.validation, vocab);
  TrainConfig c;
  c.maxSteps = 12;
  c.evalInterval = 5;
  c.batchSize = 4;
  c.noiseStartStep = -1;
  const auto dir = scratchDir("determinism");
  TrainingOutputs out;
  out.checkpoint = dir / "model.ckpt";
  out.log = dir / "train_log.csv";
  const auto first = runTraining(train, validation, smallModel(), c, corpus.registry, out);
  const std::string ckpt = readFile(*out.checkpoint);
  const std::string log = readFile(*out.log);
  const auto second = runTraining(train, validation, smallModel(), c, corpus.registry, out);

  EXPECT_EQ(readFile(*out.checkpoint), ckpt);
  EXPECT_EQ(readFile(*out.log), log);
  EXPECT_EQ(log, first.log.serialize());
  ASSERT_EQ(first.log.rows.size(), 3u);  // steps 5, 10, 12
  EXPECT_EQ(first.log.rows.back().step, 12);
  for (std::size_t i = 0; i < first.best.params().size(); ++i) {
    EXPECT_EQ(first.best.params().value(i), second.best.params().value(i));
  }
  const Checkpoint loaded = Checkpoint::load(*out.checkpoint);
  EXPECT_EQ(loaded.step, first.bestStep);
  EXPECT_EQ(loaded.vocabFingerprint, vocab.fingerprint());
  std::filesystem::remove_all(dir);
}

TEST(RunTrainingTest, OverfitsOneUtterance) {
  CorpusConfig cc = smallCorpus(1, 1, 1);
  cc.languages.resize(1);
  const CorpusSplits corpus = buildCorpus(cc, 11);
  const UnionVocab vocab = UnionVocab::build(corpus.registry);
  const auto train = makeExamples(corpus.train, vocab);
  TrainConfig c;
  c.maxSteps = 500;
  c.evalInterval = 100;
  const auto run = runTraining(train, train, ModelConfig{}, c, corpus.registry);
  EXPECT_LT(run.log.rows.back().trainLoss, 0.01);
  const Hypothesis h = greedyDecode(run.best, train[0].features, 0);
  EXPECT_EQ(h.content(), train[0].tokens);
}

TEST(MonolingualSuiteTest, PerLanguageVocabularies) {
  const CorpusSplits corpus = buildCorpus(smallCorpus(3, 1, 1), 4);
  TrainConfig c;
  c.maxSteps = 2;
  c.evalInterval = 1;
  const auto dir = scratchDir("mono");
  const auto suite = trainMonolingualSuite(
      corpus, corpus.registry.ids(), smallModel(), c, [&](const std::string& id) {
        TrainingOutputs o;
        o.checkpoint = dir / (id + ".ckpt");
        return o;
      });
  ASSERT_EQ(suite.size(), 3u);
  for (const auto& m : suite) {
    const UnionVocab own = UnionVocab::build(m.languages);
    const LanguageSpec& spec = corpus.registry.get(m.language);
    EXPECT_EQ(own.size(), spec.graphemes.size() + UnionVocab::kNumSpecials);
    EXPECT_EQ(m.run.best.config().vocabSize, static_cast<int>(own.size()));
    EXPECT_EQ(m.run.best.config().numLanguages, 1);
    for (const auto& other : corpus.registry.languages()) {
      if (other.id == m.language) continue;
      for (const auto& g : other.graphemes) EXPECT_FALSE(own.find(g).has_value());
    }
    const Checkpoint ck = Checkpoint::load(dir / (m.language + ".ckpt"));
    EXPECT_EQ(ck.languages.ids(), std::vector<std::string>{m.language});
  }
  std::filesystem::remove_all(dir);
}

TEST(MonolingualSuiteTest, EmptySubsetIsConfigError) {
  CorpusSplits corpus = buildCorpus(smallCorpus(2, 1, 1), 4);
  TrainConfig c;
  c.maxSteps = 1;
  EXPECT_THROW(trainMonolingualSuite(corpus, {}, smallModel(), c), ConfigError);
  EXPECT_THROW(trainMonolingualSuite(corpus, {"xx"}, smallModel(), c), ConfigError);
  corpus.validation.utterances.clear();
  EXPECT_THROW(trainMonolingualSuite(corpus, {"hi"}, smallModel(), c), ConfigError);
}

}  // namespace
}  // namespace mlas
