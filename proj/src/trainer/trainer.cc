// mlas/trainer/trainer.cc
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

#include "mlas/trainer/trainer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "mlas/common/errors.h"
#include "mlas/common/fileio.h"
#include "mlas/common/hash.h"
#include "mlas/langpack/vocab.h"
#include "mlas/model/examples.h"

namespace mlas {

namespace {

using nlohmann::json;

constexpr int kSortWindowBatches = 8;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <typename T>
T numberField(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw ConfigError("train." + key + " must be an integer");
  } else {
    if (!v.is_number()) throw ConfigError("train." + key + " must be a number");
  }
  return v.get<T>();
}

}  // namespace

void TrainConfig::validate() const {
  if (!(initialLr > 0.0)) throw ConfigError("train.initial_lr must be positive");
  if (!(decayRate > 0.0 && decayRate <= 1.0)) {
    throw ConfigError("train.decay_rate must lie in (0, 1]");
  }
  if (decayInterval < 1) throw ConfigError("train.decay_interval must be >= 1");
  if (!(l2 >= 0.0)) throw ConfigError("train.l2 must be nonnegative");
  if (!(noiseStddev >= 0.0)) throw ConfigError("train.noise_stddev must be nonnegative");
  if (maxSteps < 0) throw ConfigError("train.max_steps must be nonnegative");
  if (batchSize < 1) throw ConfigError("train.batch_size must be >= 1");
  if (evalInterval < 1) throw ConfigError("train.eval_interval must be >= 1");
  if (!(clipNorm > 0.0)) throw ConfigError("train.clip_norm must be positive");
}

double TrainConfig::learningRate(std::int64_t step) const {
  return initialLr * std::pow(decayRate, static_cast<double>(step) / decayInterval);
}

json TrainConfig::toJson() const {
  return {{"initial_lr", initialLr},   {"decay_rate", decayRate},
          {"decay_interval", decayInterval}, {"l2", l2},
          {"noise_stddev", noiseStddev}, {"noise_start_step", noiseStartStep},
          {"max_steps", maxSteps},     {"batch_size", batchSize},
          {"eval_interval", evalInterval}, {"clip_norm", clipNorm},
          {"seed", seed}};
}

TrainConfig TrainConfig::fromJson(const json& doc) {
  if (!doc.is_object()) throw ConfigError("train config must be an object");
  TrainConfig c;
  for (const auto& [key, _] : doc.items()) {
    if (key == "initial_lr") {
      c.initialLr = numberField<double>(doc, key);
    } else if (key == "decay_rate") {
      c.decayRate = numberField<double>(doc, key);
    } else if (key == "decay_interval") {
      c.decayInterval = numberField<int>(doc, key);
    } else if (key == "l2") {
      c.l2 = numberField<double>(doc, key);
    } else if (key == "noise_stddev") {
      c.noiseStddev = numberField<double>(doc, key);
    } else if (key == "noise_start_step") {
      c.noiseStartStep = numberField<std::int64_t>(doc, key);
    } else if (key == "max_steps") {
      c.maxSteps = numberField<std::int64_t>(doc, key);
    } else if (key == "batch_size") {
      c.batchSize = numberField<int>(doc, key);
    } else if (key == "eval_interval") {
      c.evalInterval = numberField<int>(doc, key);
    } else if (key == "clip_norm") {
      c.clipNorm = numberField<double>(doc, key);
    } else if (key == "seed") {
      if (!doc[key].is_number_unsigned() && !doc[key].is_number_integer()) {
        throw ConfigError("train.seed must be an integer");
      }
      if (doc[key].is_number_integer() && doc[key].get<std::int64_t>() < 0) {
        throw ConfigError("train.seed must be nonnegative");
      }
      c.seed = doc[key].get<std::uint64_t>();
    } else {
      throw ConfigError("unknown train key '" + key + "'");
    }
  }
  return c;
}

StepResult trainStep(TrainState& state, const BatchObjective& objective,
                     const TrainConfig& config) {
  StepResult result;
  result.learningRate = config.learningRate(state.step);
  result.noisy = config.noiseActive(state.step);

  GradSet grads(state.params);
  double loss = 0.0;
  // Blown-up parameters surface as non-finite activations before the loss.
  try {
    if (result.noisy) {
      ParamSet noisy = state.params;
      std::mt19937_64 rng(deriveSeed(config.seed, "weight-noise/" + std::to_string(state.step)));
      std::normal_distribution<double> gauss(0.0, config.noiseStddev);
      for (std::size_t i = 0; i < noisy.size(); ++i) {
        for (double& v : noisy.value(i).values()) v += gauss(rng);
      }
      loss = objective(noisy, grads);
    } else {
      loss = objective(state.params, grads);
    }
  } catch (const NonFiniteInput&) {
    throw DivergedError(state.step, std::numeric_limits<double>::quiet_NaN());
  }
  result.gradNorm = grads.norm();
  if (!std::isfinite(loss)) throw DivergedError(state.step, loss);
  if (!std::isfinite(result.gradNorm)) throw DivergedError(state.step, result.gradNorm);

  result.loss = loss + config.l2 * state.params.squaredNorm();
  if (result.gradNorm > config.clipNorm) grads.scale(config.clipNorm / result.gradNorm);
  for (std::size_t i = 0; i < state.params.size(); ++i) {
    auto theta = state.params.value(i).values();
    const auto g = grads[i].values();
    for (std::size_t k = 0; k < theta.size(); ++k) {
      theta[k] -= result.learningRate * (g[k] + 2.0 * config.l2 * theta[k]);
    }
  }
  ++state.step;
  return result;
}

std::string TrainingLog::serialize() const {
  std::string out = "step,train_loss,val_loss,lr\n";
  for (const auto& r : rows) {
    out += std::to_string(r.step) + "," + formatDouble(r.trainLoss) + "," +
           formatDouble(r.validationLoss) + "," + formatDouble(r.learningRate) + "\n";
  }
  return out;
}

TrainingLog TrainingLog::parse(std::string_view text) {
  constexpr std::string_view kHeader = "step,train_loss,val_loss,lr\n";
  if (!text.starts_with(kHeader)) throw FormatError("training log header mismatch");
  TrainingLog log;
  std::size_t pos = kHeader.size();
  while (pos < text.size()) {
    const std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) throw FormatError("training log must end with a newline");
    std::string_view line = text.substr(pos, end - pos);
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (std::size_t comma; (comma = line.find(',', start)) != std::string_view::npos;) {
      cells.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    cells.push_back(line.substr(start));
    if (cells.size() != 4) throw FormatError("training log row needs 4 columns");
    LogRow row;
    row.step = static_cast<std::int64_t>(parseDouble(cells[0]));
    row.trainLoss = parseDouble(cells[1]);
    row.validationLoss = parseDouble(cells[2]);
    row.learningRate = parseDouble(cells[3]);
    log.rows.push_back(row);
    pos = end + 1;
  }
  return log;
}

std::string TrainingLog::componentsCsv() const {
  std::string out = "step,val_loss,val_las,val_lid\n";
  for (const auto& r : rows) {
    out += std::to_string(r.step) + "," + formatDouble(r.validationLoss) + "," +
           formatDouble(r.validationLas) + "," + formatDouble(r.validationLid) + "\n";
  }
  return out;
}

double meanLoss(const LasModel& model, const std::vector<Example>& examples) {
  return meanLossTerms(model, examples).total;
}

LossBreakdown meanLossTerms(const LasModel& model, const std::vector<Example>& examples) {
  if (examples.empty()) throw InvalidArgument("mean loss over no examples");
  const bool mtl = model.config().variant == Variant::kMtl;
  LossBreakdown out;
  out.lid = mtl ? 0.0 : std::numeric_limits<double>::quiet_NaN();
  for (const auto& e : examples) {
    Graph g;
    g.setGradEnabled(false);
    const LossTerms terms = model.loss(g, e);
    out.total += terms.total.scalar();
    out.las += terms.las.scalar();
    if (mtl) out.lid += terms.lid.scalar();
  }
  const double n = static_cast<double>(examples.size());
  out.total /= n;
  out.las /= n;
  out.lid /= n;
  return out;
}

BatchObjective batchObjective(const LasModel& model, const std::vector<const Example*>& batch) {
  if (batch.empty()) throw InvalidArgument("empty batch");
  return [&model, batch](const ParamSet& at, GradSet& grads) {
    LasModel scratch(model.config(), at);
    double total = 0.0;
    for (const Example* e : batch) {
      Graph g;
      Value loss = scratch.loss(g, *e).total;
      total += loss.scalar();
      g.backward(loss);
      g.accumulateParamGrads(grads);
    }
    const double scale = 1.0 / static_cast<double>(batch.size());
    grads.scale(scale);
    return total * scale;
  };
}

BatchSampler::BatchSampler(const std::vector<Example>& examples, int batchSize,
                           std::uint64_t seed)
    : examples_(&examples), batchSize_(batchSize), seed_(seed) {
  if (examples.empty()) throw InvalidArgument("cannot sample batches from no examples");
  if (batchSize < 1) throw InvalidArgument("batch size must be >= 1");
}

void BatchSampler::refill() {
  ++epoch_;
  std::vector<const Example*> order;
  for (const auto& e : *examples_) order.push_back(&e);
  std::mt19937_64 rng(deriveSeed(seed_, "epoch/" + std::to_string(epoch_)));
  std::shuffle(order.begin(), order.end(), rng);

  const std::size_t window = static_cast<std::size_t>(batchSize_) * kSortWindowBatches;
  for (std::size_t start = 0; start < order.size(); start += window) {
    auto first = order.begin() + static_cast<std::ptrdiff_t>(start);
    auto last = order.begin() + static_cast<std::ptrdiff_t>(std::min(order.size(), start + window));
    std::stable_sort(first, last, [](const Example* a, const Example* b) {
      return a->features.length() < b->features.length();
    });
  }
  batches_.clear();
  for (std::size_t start = 0; start < order.size(); start += batchSize_) {
    const std::size_t end = std::min(order.size(), start + batchSize_);
    batches_.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start),
                          order.begin() + static_cast<std::ptrdiff_t>(end));
  }
  std::shuffle(batches_.begin(), batches_.end(), rng);
  next_ = 0;
}

std::vector<const Example*> BatchSampler::next() {
  if (next_ >= batches_.size()) refill();
  return batches_[next_++];
}

namespace {

ModelConfig completeConfig(ModelConfig config, const LanguageRegistry& languages) {
  const auto vocabSize = static_cast<int>(UnionVocab::build(languages).size());
  const auto numLanguages = static_cast<int>(languages.size());
  if (config.vocabSize == 0) config.vocabSize = vocabSize;
  if (config.numLanguages == 0) config.numLanguages = numLanguages;
  if (config.vocabSize != vocabSize || config.numLanguages != numLanguages) {
    throw ConfigError("model vocab_size/num_languages disagree with the language registry");
  }
  config.validate();
  return config;
}

}  // namespace

TrainingRun runTraining(const std::vector<Example>& train, const std::vector<Example>& validation,
                        const ModelConfig& modelConfig, const TrainConfig& config,
                        const LanguageRegistry& languages, const TrainingOutputs& outputs,
                        const std::optional<ResumePoint>& resume) {
  config.validate();
  if (train.empty()) throw ConfigError("training split is empty");
  if (validation.empty()) throw ConfigError("validation split is empty");
  const ModelConfig full = completeConfig(modelConfig, languages);

  LasModel model = LasModel::initialize(full, deriveSeed(config.seed, "init"));
  TrainState state;
  state.params = model.params();
  TrainingRun run{model, {}, 0, std::numeric_limits<double>::infinity(), 0};
  if (resume) {
    model = LasModel(full, resume->params);
    state.params = resume->params;
    state.step = resume->step;
    state.bestValidationLoss = resume->bestValidationLoss;
    run = TrainingRun{model, {}, resume->step, resume->bestValidationLoss, resume->step};
    for (const auto& row : resume->log.rows) {
      if (row.step <= resume->step) run.log.rows.push_back(row);
    }
  }
  const bool mtl = full.variant == Variant::kMtl;

  auto persist = [&](const ParamSet& params, std::int64_t step) {
    if (!outputs.checkpoint) return;
    Checkpoint::of(LasModel(full, params), languages, step, config.seed, outputs.stackWindow,
                   outputs.stackStride)
        .save(*outputs.checkpoint);
  };
  auto writeLog = [&] {
    if (outputs.log) writeFile(*outputs.log, run.log.serialize());
    if (mtl && outputs.componentsLog) writeFile(*outputs.componentsLog, run.log.componentsCsv());
  };
  if (!resume) persist(state.params, 0);
  writeLog();
  if (config.maxSteps == 0) return run;

  BatchSampler sampler(train, config.batchSize, config.seed);
  for (std::int64_t s = 0; s < state.step; ++s) sampler.next();
  double trainSum = 0.0;
  int trainCount = 0;
  while (state.step < config.maxSteps) {
    const auto batch = sampler.next();
    const StepResult r = trainStep(state, batchObjective(model, batch), config);
    trainSum += r.loss;
    ++trainCount;
    if (state.step % config.evalInterval == 0 || state.step == config.maxSteps) {
      model.params() = state.params;
      LossBreakdown terms;
      try {
        terms = meanLossTerms(model, validation);
      } catch (const NonFiniteInput&) {
        throw DivergedError(state.step, kNaN);
      }
      const double val = terms.total;
      if (!std::isfinite(val)) throw DivergedError(state.step, val);
      run.log.rows.push_back({state.step, trainSum / trainCount, val,
                              config.learningRate(state.step), mtl ? terms.las : kNaN,
                              terms.lid});
      trainSum = 0.0;
      trainCount = 0;
      if (outputs.onEvaluation) outputs.onEvaluation(run.log.rows.back());
      if (val < state.bestValidationLoss) {
        state.bestValidationLoss = val;
        run.best = model;
        run.bestStep = state.step;
        run.bestValidationLoss = val;
        persist(state.params, state.step);
      }
      writeLog();
    }
  }
  run.steps = state.step;
  return run;
}

std::vector<Example> monolingualExamples(const Corpus& corpus, const LanguageRegistry& own,
                                         const std::string& language, int stackWindow,
                                         int stackStride) {
  const UnionVocab vocab = UnionVocab::build(own);
  std::vector<Example> out;
  for (const auto* u : corpus.ofLanguage(language)) {
    out.push_back(makeExample(*u, vocab, stackWindow, stackStride));
  }
  return out;
}

std::vector<MonolingualModel> trainMonolingualSuite(
    const CorpusSplits& corpus, const std::vector<std::string>& languageIds,
    const ModelConfig& modelConfig, const TrainConfig& config,
    const std::function<TrainingOutputs(const std::string&)>& outputsFor,
    const std::function<std::optional<ResumePoint>(const std::string&)>& resumeFor) {
  if (languageIds.empty()) throw ConfigError("monolingual suite needs at least one language");
  for (const auto& id : languageIds) {
    if (!corpus.registry.find(id)) throw ConfigError("unknown language '" + id + "'");
  }
  std::vector<MonolingualModel> out;
  for (const auto& id : languageIds) {
    LanguageRegistry own = corpus.registry.subset({id});
    const TrainingOutputs outputs = outputsFor ? outputsFor(id) : TrainingOutputs{};
    const auto train = monolingualExamples(corpus.train, own, id, outputs.stackWindow,
                                           outputs.stackStride);
    const auto validation = monolingualExamples(corpus.validation, own, id,
                                                outputs.stackWindow, outputs.stackStride);
    if (train.empty() || validation.empty()) {
      throw ConfigError("language '" + id + "' has no training or validation utterances");
    }
    ModelConfig mc = modelConfig;
    mc.vocabSize = 0;
    mc.numLanguages = 0;
    const std::optional<ResumePoint> resume = resumeFor ? resumeFor(id) : std::nullopt;
    out.push_back({id, own, runTraining(train, validation, mc, config, own, outputs, resume)});
  }
  return out;
}

}  // namespace mlas
