// mlas/cli/experiment.h
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

// One JSON file describes an experiment: corpus, features, model,
// training, decoding, probes and the output directory. Every section is
// optional; unknown keys are rejected with the offending path.

#ifndef MLAS_CLI_EXPERIMENT_H_
#define MLAS_CLI_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mlas/corpus/synthetic.h"
#include "mlas/inference/decoder.h"
#include "mlas/model/config.h"
#include "mlas/trainer/trainer.h"

namespace mlas {

struct ProbeSettings {
  int count = 40;
  std::string codeSwitchA = "ta";
  std::string codeSwitchB = "hi";
  std::string speechLanguage = "ur";
  std::string claimedLanguage = "hi";
};

struct ExperimentConfig {
  // Corpus generation, weight initialization, batching and weight noise
  // all derive from this one value.
  std::uint64_t seed = 1;
  std::filesystem::path outputDir = "runs/experiment";
  CorpusConfig corpus = CorpusConfig::toy();
  int stackWindow = kDefaultStackWindow;
  int stackStride = kDefaultStackStride;
  ModelConfig model;
  TrainConfig train;
  // Weight-noise stddev for monolingual models; train.noise_stddev applies
  // to the multilingual ones.
  double monolingualNoiseStddev = 0.01;
  BeamConfig decode;
  ProbeSettings probe;

  // Resolved configuration, every field explicit.
  nlohmann::json toJson() const;

  // Throws ConfigError naming the line and column of a syntax error or the
  // dotted path of a bad field. `overrides` are `section.key=value`
  // assignments applied before validation; values parse as JSON, falling
  // back to a plain string.
  static ExperimentConfig parse(std::string_view text,
                                const std::vector<std::string>& overrides = {});
  // Throws IoError when the file cannot be read.
  static ExperimentConfig load(const std::filesystem::path& path,
                               const std::vector<std::string>& overrides = {});

  // Derived layout under outputDir.
  std::filesystem::path corpusDir() const { return outputDir / "corpus"; }
  std::filesystem::path modelDir(std::string_view name) const {
    return outputDir / "models" / std::string(name);
  }
};

}  // namespace mlas

#endif  // MLAS_CLI_EXPERIMENT_H_
