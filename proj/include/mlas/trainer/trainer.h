// mlas/trainer/trainer.h
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

#ifndef MLAS_TRAINER_TRAINER_H_
#define MLAS_TRAINER_TRAINER_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mlas/corpus/synthetic.h"
#include "mlas/langpack/registry.h"
#include "mlas/model/checkpoint.h"
#include "mlas/model/las.h"

namespace mlas {

struct TrainConfig {
  double initialLr = 0.5;
  double decayRate = 0.98;
  int decayInterval = 500;
  double l2 = 1e-6;
  double noiseStddev = 0.0075;
  // A negative value disables weight noise.
  std::int64_t noiseStartStep = 1000;
  std::int64_t maxSteps = 5000;
  int batchSize = 8;
  int evalInterval = 250;
  double clipNorm = 5.0;
  std::uint64_t seed = 1;

  // Throws ConfigError.
  void validate() const;
  // initialLr * decayRate^(step / decayInterval), continuous exponent.
  double learningRate(std::int64_t step) const;
  bool noiseActive(std::int64_t step) const {
    return noiseStartStep >= 0 && step >= noiseStartStep && noiseStddev > 0.0;
  }

  nlohmann::json toJson() const;
  // Missing keys keep their defaults; unknown keys throw ConfigError.
  static TrainConfig fromJson(const nlohmann::json& doc);
};

struct TrainState {
  std::int64_t step = 0;
  ParamSet params;
  double bestValidationLoss = std::numeric_limits<double>::infinity();
};

// Mean loss over a batch evaluated at `at`, with d(mean)/d(params) added
// into `grads`.
using BatchObjective = std::function<double(const ParamSet& at, GradSet& grads)>;

struct StepResult {
  double loss = 0.0;       // objective + l2 * sum of squared parameters
  double gradNorm = 0.0;   // before clipping
  double learningRate = 0.0;
  bool noisy = false;
};

// One SGD update. When noise is active the objective is evaluated at
// params + eps, eps ~ N(0, noiseStddev^2) drawn from (seed, step), and the
// update is applied to the clean params. Gradients are clipped to
// clipNorm before the L2 term 2 * l2 * param is added. Throws DivergedError
// for a non-finite loss, gradient or activation, leaving `state` untouched.
StepResult trainStep(TrainState& state, const BatchObjective& objective,
                     const TrainConfig& config);

struct LogRow {
  std::int64_t step = 0;
  double trainLoss = 0.0;
  double validationLoss = 0.0;
  double learningRate = 0.0;
  // mtl only: the two validation loss components; NaN otherwise. Not part
  // of the four-column CSV.
  double validationLas = std::numeric_limits<double>::quiet_NaN();
  double validationLid = std::numeric_limits<double>::quiet_NaN();
};

// CSV with header `step,train_loss,val_loss,lr`; numbers in shortest
// round-trip form.
struct TrainingLog {
  std::vector<LogRow> rows;

  std::string serialize() const;
  static TrainingLog parse(std::string_view text);  // throws FormatError
  // `step,val_loss,val_las,val_lid` for mtl runs.
  std::string componentsCsv() const;
};

// Mean of the variant's objective over `examples`, no gradients.
double meanLoss(const LasModel& model, const std::vector<Example>& examples);

struct LossBreakdown {
  double total = 0.0;
  double las = 0.0;
  double lid = std::numeric_limits<double>::quiet_NaN();  // mtl only
};
LossBreakdown meanLossTerms(const LasModel& model, const std::vector<Example>& examples);

// Objective for a fixed batch: the model's loss averaged over `batch`.
BatchObjective batchObjective(const LasModel& model, const std::vector<const Example*>& batch);

// Epoch-wise shuffles from (seed, epoch); inside windows of eight batches
// the examples are sorted by length so batches hold similar lengths.
class BatchSampler {
 public:
  BatchSampler(const std::vector<Example>& examples, int batchSize, std::uint64_t seed);
  std::vector<const Example*> next();
  std::int64_t epoch() const { return epoch_; }

 private:
  void refill();

  const std::vector<Example>* examples_;
  int batchSize_;
  std::uint64_t seed_;
  std::int64_t epoch_ = -1;
  std::vector<std::vector<const Example*>> batches_;
  std::size_t next_ = 0;
};

struct TrainingRun {
  LasModel best;
  TrainingLog log;
  std::int64_t bestStep = 0;
  double bestValidationLoss = std::numeric_limits<double>::infinity();
  std::int64_t steps = 0;
};

struct TrainingOutputs {
  // Written whenever validation improves, and once at the start.
  std::optional<std::filesystem::path> checkpoint;
  // Rewritten after every log row.
  std::optional<std::filesystem::path> log;
  // mtl runs only: TrainingLog::componentsCsv(), rewritten with the log.
  std::optional<std::filesystem::path> componentsLog;
  // Called after every validation row.
  std::function<void(const LogRow&)> onEvaluation;
  int stackWindow = kDefaultStackWindow;
  int stackStride = kDefaultStackStride;
};

// Continue from saved parameters at `step`. Log rows after `step` are
// dropped; the batch order is replayed, so the run continues on the same
// batches an uninterrupted run would have drawn.
struct ResumePoint {
  ParamSet params;
  std::int64_t step = 0;
  TrainingLog log;
  double bestValidationLoss = std::numeric_limits<double>::infinity();
};

// Trains from initialization seeded by config.seed. Validation runs every
// evalInterval steps and after the last step; the best-validation
// parameters are returned. maxSteps == 0 returns the initial parameters
// and an empty log. Throws ConfigError for empty splits and DivergedError
// (the checkpoint on disk keeps the last improvement).
TrainingRun runTraining(const std::vector<Example>& train, const std::vector<Example>& validation,
                        const ModelConfig& modelConfig, const TrainConfig& config,
                        const LanguageRegistry& languages, const TrainingOutputs& outputs = {},
                        const std::optional<ResumePoint>& resume = std::nullopt);

struct MonolingualModel {
  std::string language;
  LanguageRegistry languages;  // just this language
  TrainingRun run;
};

// One model per registry language with utterances, trained only on that
// language's subset with a vocabulary of its own graphemes plus the
// specials. vocabSize and numLanguages are taken from each subset; the
// rest of `modelConfig` is shared. Throws ConfigError when a requested
// language has no training or validation utterances.
std::vector<MonolingualModel> trainMonolingualSuite(
    const CorpusSplits& corpus, const std::vector<std::string>& languageIds,
    const ModelConfig& modelConfig, const TrainConfig& config,
    const std::function<TrainingOutputs(const std::string&)>& outputsFor = {},
    const std::function<std::optional<ResumePoint>(const std::string&)>& resumeFor = {});

// Examples of one language under its own single-language vocabulary.
std::vector<Example> monolingualExamples(const Corpus& corpus, const LanguageRegistry& own,
                                         const std::string& language, int stackWindow,
                                         int stackStride);

}  // namespace mlas

#endif  // MLAS_TRAINER_TRAINER_H_
