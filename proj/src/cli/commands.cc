// mlas/cli/commands.cc
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

#include "mlas/cli/commands.h"

#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "mlas/cli/experiment.h"
#include "mlas/common/errors.h"
#include "mlas/common/fileio.h"
#include "mlas/corpus/corpus_io.h"
#include "mlas/evalkit/metrics.h"
#include "mlas/evalkit/probes.h"
#include "mlas/model/checkpoint.h"
#include "mlas/model/examples.h"
#include "mlas/trainer/trainer.h"

namespace mlas {

namespace fs = std::filesystem;

namespace {

constexpr const char* kCheckpointFile = "model.ckpt";
constexpr const char* kLogFile = "train_log.csv";
constexpr const char* kComponentsFile = "loss_components.csv";
constexpr const char* kExperimentFile = "experiment.json";
constexpr const char* kMonolingual = "monolingual";

struct CommonFlags {
  std::string config;
  std::string outputDir;
  std::vector<std::string> overrides;
};

ExperimentConfig loadConfig(const CommonFlags& flags) {
  ExperimentConfig cfg = ExperimentConfig::load(flags.config, flags.overrides);
  if (!flags.outputDir.empty()) cfg.outputDir = flags.outputDir;
  return cfg;
}

void makeDirs(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

void writeText(const fs::path& path, const std::string& text) {
  makeDirs(path.parent_path());
  writeFile(path, text);
}

void writeProvenance(const fs::path& dir, const ExperimentConfig& cfg) {
  writeText(dir / kExperimentFile, cfg.toJson().dump(2) + "\n");
}

// Exclusive lock file in the output directory, removed on destruction.
class DirectoryLock {
 public:
  explicit DirectoryLock(const fs::path& dir) : path_(dir / kLockFile) {
    makeDirs(dir);
    std::FILE* f = std::fopen(path_.c_str(), "wx");
    if (!f) {
      if (fs::exists(path_)) {
        throw IoError("output directory " + dir.string() +
                      " is in use by another mlas invocation (stale? remove " + path_.string() +
                      ")");
      }
      throw IoError("cannot create lock file " + path_.string());
    }
    std::fclose(f);
  }
  ~DirectoryLock() {
    std::error_code ec;
    fs::remove(path_, ec);
  }
  DirectoryLock(const DirectoryLock&) = delete;
  DirectoryLock& operator=(const DirectoryLock&) = delete;

 private:
  fs::path path_;
};

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

std::string padRight(const std::string& s, std::size_t w) {
  return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
}

std::string padLeft(const std::string& s, std::size_t w) {
  return std::string(w > s.size() ? w - s.size() : 0, ' ') + s;
}

CorpusSplits requireCorpus(const ExperimentConfig& cfg) {
  if (!fs::exists(cfg.corpusDir() / kManifestFile)) {
    throw IoError("no corpus in " + cfg.corpusDir().string() + "; run gen-corpus first");
  }
  CorpusSplits corpus = loadCorpus(cfg.corpusDir());
  if (corpus.seed != cfg.seed) {
    throw ConfigError("corpus in " + cfg.corpusDir().string() + " was generated with seed " +
                      std::to_string(corpus.seed) + " but the config says " +
                      std::to_string(cfg.seed) + "; rerun gen-corpus");
  }
  return corpus;
}

Split splitFlag(const std::string& name) {
  try {
    return parseSplit(name);
  } catch (const FormatError&) {
    throw ConfigError("unknown split '" + name + "' (train, validation or test)");
  }
}

// ---------------------------------------------------------------- gen-corpus

int genCorpus(const ExperimentConfig& cfg, std::ostream& out) {
  const bool existed = fs::exists(cfg.outputDir);
  fs::path staging = cfg.corpusDir();
  staging += ".partial";
  try {
    DirectoryLock lock(cfg.outputDir);
    const CorpusSplits corpus = buildCorpus(cfg.corpus, cfg.seed);
    std::error_code ec;
    fs::remove_all(staging, ec);
    saveCorpus(staging, corpus);
    writeProvenance(staging, cfg);
    fs::remove_all(cfg.corpusDir(), ec);
    fs::rename(staging, cfg.corpusDir(), ec);
    if (ec) throw IoError("cannot move corpus into place: " + ec.message());

    out << padRight("language", 12) << padLeft("# training utts.", 18)
        << padLeft("# validation utts.", 20) << padLeft("# test utts.", 14) << "\n";
    std::size_t tr = 0, va = 0, te = 0;
    for (const auto& l : cfg.corpus.languages) {
      const auto a = corpus.train.ofLanguage(l.id).size();
      const auto b = corpus.validation.ofLanguage(l.id).size();
      const auto c = corpus.test.ofLanguage(l.id).size();
      out << padRight(l.id, 12) << padLeft(std::to_string(a), 18) << padLeft(std::to_string(b), 20)
          << padLeft(std::to_string(c), 14) << "\n";
      tr += a;
      va += b;
      te += c;
    }
    out << padRight("total", 12) << padLeft(std::to_string(tr), 18)
        << padLeft(std::to_string(va), 20) << padLeft(std::to_string(te), 14) << "\n";
    out << "corpus written to " << cfg.corpusDir().string() << " (seed " << cfg.seed << ")\n";
  } catch (...) {
    std::error_code ec;
    if (!existed) {
      fs::remove_all(cfg.outputDir, ec);
    } else {
      fs::remove_all(staging, ec);
    }
    throw;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------- train

std::optional<ResumePoint> resumeFrom(const fs::path& dir, const LanguageRegistry& languages,
                                      Variant variant) {
  const Checkpoint ck = Checkpoint::load(dir / kCheckpointFile);
  if (ck.vocabFingerprint != UnionVocab::build(languages).fingerprint()) {
    throw FingerprintError("checkpoint " + (dir / kCheckpointFile).string() +
                           " does not match the corpus vocabulary");
  }
  if (ck.config.variant != variant) {
    throw VariantError("checkpoint " + (dir / kCheckpointFile).string() + " holds a " +
                       std::string(variantName(ck.config.variant)) + " model");
  }
  ResumePoint r;
  r.params = ck.params;
  r.step = ck.step;
  if (fs::exists(dir / kLogFile)) r.log = TrainingLog::parse(readFile(dir / kLogFile));
  for (const auto& row : r.log.rows) {
    if (row.step == ck.step) r.bestValidationLoss = row.validationLoss;
  }
  return r;
}

TrainingOutputs outputsIn(const fs::path& dir, const ExperimentConfig& cfg, std::ostream& out,
                          const std::string& tag) {
  makeDirs(dir);
  TrainingOutputs o;
  o.checkpoint = dir / kCheckpointFile;
  o.log = dir / kLogFile;
  o.componentsLog = dir / kComponentsFile;
  o.stackWindow = cfg.stackWindow;
  o.stackStride = cfg.stackStride;
  o.onEvaluation = [&out, tag](const LogRow& r) {
    out << tag << "step " << r.step << "  train " << fmt("%.4f", r.trainLoss) << "  val "
        << fmt("%.4f", r.validationLoss);
    if (!std::isnan(r.validationLid)) {
      out << " (las " << fmt("%.4f", r.validationLas) << ", lid " << fmt("%.4f", r.validationLid)
          << ")";
    }
    out << "  lr " << fmt("%.4g", r.learningRate) << "\n";
  };
  return o;
}

void printRunSummary(std::ostream& out, const std::string& tag, const TrainingRun& run,
                     const fs::path& dir) {
  out << tag << "best step " << run.bestStep << ", validation loss "
      << fmt("%.4f", run.bestValidationLoss) << ", " << run.steps << " steps; checkpoint "
      << (dir / kCheckpointFile).string() << "\n";
}

int train(const ExperimentConfig& cfg, const std::string& variant, const std::string& language,
          std::optional<double> lambda, bool resume, std::ostream& out) {
  const CorpusSplits corpus = requireCorpus(cfg);
  DirectoryLock lock(cfg.outputDir);

  if (variant == kMonolingual) {
    if (lambda) throw ConfigError("--lambda applies to the mtl variant only");
    std::vector<std::string> ids;
    if (language == "all") {
      for (const auto& id : corpus.registry.ids()) {
        if (!corpus.train.ofLanguage(id).empty()) ids.push_back(id);
      }
    } else {
      std::stringstream ss(language);
      for (std::string id; std::getline(ss, id, ',');) ids.push_back(id);
    }
    TrainConfig tc = cfg.train;
    tc.noiseStddev = cfg.monolingualNoiseStddev;
    ModelConfig mc = cfg.model;
    mc.variant = Variant::kJoint;
    const auto dirOf = [&](const std::string& id) {
      return cfg.modelDir(kMonolingual) / id;
    };
    const auto suite = trainMonolingualSuite(
        corpus, ids, mc, tc,
        [&](const std::string& id) { return outputsIn(dirOf(id), cfg, out, "[" + id + "] "); },
        [&](const std::string& id) -> std::optional<ResumePoint> {
          if (!resume) return std::nullopt;
          return resumeFrom(dirOf(id), corpus.registry.subset({id}), Variant::kJoint);
        });
    for (const auto& m : suite) {
      writeProvenance(dirOf(m.language), cfg);
      printRunSummary(out, "[" + m.language + "] ", m.run, dirOf(m.language));
    }
    return kExitOk;
  }

  if (!language.empty() && language != "all") {
    throw ConfigError("--language applies to the monolingual suite only");
  }
  ModelConfig mc = cfg.model;
  mc.variant = parseVariant(variant);
  if (lambda) {
    if (mc.variant != Variant::kMtl) throw ConfigError("--lambda applies to the mtl variant only");
    if (*lambda < 0.0) throw ConfigError("--lambda must be nonnegative");
    mc.lambda = *lambda;
  }
  const UnionVocab vocab = UnionVocab::build(corpus.registry);
  const auto trainSet = makeExamples(corpus.train, vocab, cfg.stackWindow, cfg.stackStride);
  const auto validation =
      makeExamples(corpus.validation, vocab, cfg.stackWindow, cfg.stackStride);
  const fs::path dir = cfg.modelDir(variantName(mc.variant));
  const std::optional<ResumePoint> from =
      resume ? resumeFrom(dir, corpus.registry, mc.variant) : std::nullopt;
  const TrainingRun run = runTraining(trainSet, validation, mc, cfg.train, corpus.registry,
                                      outputsIn(dir, cfg, out, ""), from);
  writeProvenance(dir, cfg);
  printRunSummary(out, "", run, dir);
  return kExitOk;
}

// ------------------------------------------------------------------ loading

struct LoadedModel {
  Checkpoint checkpoint;
  UnionVocab vocab;
};

LoadedModel loadModel(const ExperimentConfig& cfg, const std::string& name,
                      const CorpusSplits& corpus) {
  const fs::path path = cfg.modelDir(name) / kCheckpointFile;
  if (!fs::exists(path)) throw IoError("no checkpoint at " + path.string() + "; train it first");
  LoadedModel m{Checkpoint::load(path), {}};
  const auto ids = m.checkpoint.languages.ids();
  for (const auto& id : ids) {
    if (!corpus.registry.find(id)) {
      throw FingerprintError("checkpoint " + path.string() + " knows language '" + id +
                             "', which the corpus lacks");
    }
  }
  m.vocab = UnionVocab::build(corpus.registry.subset(ids));
  if (m.vocab.fingerprint() != m.checkpoint.vocabFingerprint) {
    throw FingerprintError("checkpoint " + path.string() + " has vocabulary fingerprint " +
                           m.checkpoint.vocabFingerprint + " but the corpus gives " +
                           m.vocab.fingerprint());
  }
  return m;
}

HypothesisSet decodeWith(const ExperimentConfig& cfg, const std::string& name,
                         const CorpusSplits& corpus, const Corpus& refs, const BeamConfig& beam) {
  if (name != kMonolingual) {
    const LoadedModel m = loadModel(cfg, name, corpus);
    return decodeCorpus(m.checkpoint.model(), m.vocab, refs, beam, m.checkpoint.stackWindow,
                        m.checkpoint.stackStride);
  }
  std::map<std::string, HypothesisRecord> byId;
  std::vector<std::string> languages;
  for (const auto& u : refs.utterances) {
    if (std::find(languages.begin(), languages.end(), u.language) == languages.end()) {
      languages.push_back(u.language);
    }
  }
  for (const auto& id : languages) {
    const LoadedModel m = loadModel(cfg, std::string(kMonolingual) + "/" + id, corpus);
    Corpus own;
    for (const auto* u : refs.ofLanguage(id)) own.utterances.push_back(*u);
    for (auto& r : decodeCorpus(m.checkpoint.model(), m.vocab, own, beam,
                                m.checkpoint.stackWindow, m.checkpoint.stackStride)
                       .records) {
      byId.emplace(r.utteranceId, std::move(r));
    }
  }
  HypothesisSet out;
  for (const auto& u : refs.utterances) out.records.push_back(byId.at(u.id));
  return out;
}

// ----------------------------------------------------------------------- eval

void printComparison(std::ostream& out, const std::vector<std::string>& names,
                     const std::vector<ErrorRateReport>& reports, bool cer) {
  out << (cer ? "CER (%)\n" : "WER (%)\n");
  std::size_t w = 12;
  for (const auto& n : names) w = std::max(w, n.size() + 2);
  out << padRight("language", 14) << padLeft(cer ? "# chars" : "# words", 9);
  for (const auto& n : names) out << padLeft(n, w);
  out << "\n";
  for (const auto& l : reports.front().perLanguage) {
    out << padRight(l.language, 14)
        << padLeft(std::to_string(cer ? l.charCount : l.wordCount), 9);
    for (const auto& r : reports) {
      const LanguageErrors* e = r.find(l.language);
      out << padLeft(fmt("%.2f", 100.0 * (cer ? e->cer : e->wer)), w);
    }
    out << "\n";
  }
  out << padRight("weighted avg", 23);
  for (const auto& r : reports) {
    out << padLeft(fmt("%.2f", 100.0 * (cer ? r.weightedAverageCer : r.weightedAverageWer)), w);
  }
  out << "\n";
}

int eval(const ExperimentConfig& cfg, std::vector<std::string> names, const std::string& splitName,
         std::optional<int> beamWidth, const std::vector<int>& sweep,
         const std::string& hypothesesFile, std::ostream& out) {
  const CorpusSplits corpus = requireCorpus(cfg);
  const Split split = splitFlag(splitName);
  const Corpus& refs = corpus.split(split);
  const UnionVocab vocab = UnionVocab::build(corpus.registry);
  BeamConfig beam = cfg.decode;
  if (beamWidth) beam.beamWidth = *beamWidth;
  try {
    beam.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("--beam: ") + e.what());
  }
  for (int w : sweep) {
    if (w < 1) throw ConfigError("--beam-sweep widths must be >= 1");
  }
  if (!hypothesesFile.empty()) {
    if (names.size() > 1) throw ConfigError("--hypotheses scores a single hypothesis set");
    if (names.empty()) names.push_back("injected");
    if (!sweep.empty()) throw ConfigError("--beam-sweep needs a model, not --hypotheses");
  }
  if (names.empty()) names.push_back("joint");
  DirectoryLock lock(cfg.outputDir);

  std::vector<ErrorRateReport> reports;
  for (const auto& name : names) {
    const HypothesisSet hyps = hypothesesFile.empty()
                                   ? decodeWith(cfg, name, corpus, refs, beam)
                                   : HypothesisSet::parse(readFile(hypothesesFile));
    const ErrorRateReport report = scoreCorpus(refs, hyps);
    const ConfusionMatrix cm = confusionMatrix(refs, hyps, vocab);
    const fs::path dir = cfg.outputDir / "eval" / name / std::string(mlas::splitName(split));
    writeText(dir / "hypotheses.tsv", hyps.serialize());
    writeText(dir / "error_rates.csv", report.csv());
    writeText(dir / "confusion.csv", cm.csv());
    writeText(dir / "confusion.txt", cm.grid());
    writeText(dir / "report.txt", report.table() + "\nscript confusion (rows: truth)\n" +
                                      cm.grid());
    writeProvenance(dir, cfg);
    reports.push_back(report);

    if (!sweep.empty()) {
      std::string csv = "beam_width,wer,cer\n";
      out << name << " beam sweep (" << mlas::splitName(split) << ")\n"
          << padLeft("width", 8) << padLeft("WER(%)", 10) << padLeft("CER(%)", 10) << "\n";
      for (int w : sweep) {
        BeamConfig b = beam;
        b.beamWidth = w;
        const ErrorRateReport r = scoreCorpus(refs, decodeWith(cfg, name, corpus, refs, b));
        csv += std::to_string(w) + "," + fmt("%.6f", r.weightedAverageWer) + "," +
               fmt("%.6f", r.weightedAverageCer) + "\n";
        out << padLeft(std::to_string(w), 8) << padLeft(fmt("%.2f", 100 * r.weightedAverageWer), 10)
            << padLeft(fmt("%.2f", 100 * r.weightedAverageCer), 10) << "\n";
      }
      writeText(dir / "beam_sweep.csv", csv);
    }
  }
  out << "split: " << mlas::splitName(split) << ", beam width " << beam.beamWidth << "\n";
  printComparison(out, names, reports, false);
  printComparison(out, names, reports, true);
  return kExitOk;
}

// ---------------------------------------------------------------------- probe

int probe(const ExperimentConfig& cfg, const std::string& kind, std::string model,
          std::optional<int> count, const std::string& pair, const std::string& speech,
          const std::string& claimed, std::ostream& out) {
  if (kind != "code-switch" && kind != "mismatched-id") {
    throw ConfigError("unknown probe kind '" + kind + "' (code-switch or mismatched-id)");
  }
  if (model.empty()) model = kind == "code-switch" ? "joint" : "cond-enc";
  if (kind == "mismatched-id") {
    const bool monolingual = model.rfind(kMonolingual, 0) == 0;
    if (monolingual || !conditionsEncoder(parseVariant(model))) {
      throw VariantError("the mismatched-id probe needs an encoder-conditioned model "
                         "(cond-enc or cond-enc-dec); '" + model +
                         "' ignores the language id in the encoder");
    }
  }
  const CorpusSplits corpus = requireCorpus(cfg);
  const LoadedModel m = loadModel(cfg, model, corpus);
  ProbeInputs in;
  in.corpus = &corpus;
  in.split = Split::kTest;
  in.count = count.value_or(cfg.probe.count);
  in.beam = cfg.decode;
  in.stackWindow = m.checkpoint.stackWindow;
  in.stackStride = m.checkpoint.stackStride;
  DirectoryLock lock(cfg.outputDir);
  const fs::path dir = cfg.outputDir / "probes" / kind / model;
  std::string summary;
  if (kind == "code-switch") {
    std::string a = cfg.probe.codeSwitchA, b = cfg.probe.codeSwitchB;
    if (!pair.empty()) {
      const auto comma = pair.find(',');
      if (comma == std::string::npos) throw ConfigError("--pair needs two ids: A,B");
      a = pair.substr(0, comma);
      b = pair.substr(comma + 1);
    }
    const CodeSwitchReport r = codeSwitchProbe(m.checkpoint.model(), m.vocab, a, b, in);
    writeText(dir / "records.tsv", r.tsv());
    summary = r.summary();
  } else {
    const MismatchedIdReport r = mismatchedIdProbe(
        m.checkpoint.model(), m.vocab, speech.empty() ? cfg.probe.speechLanguage : speech,
        claimed.empty() ? cfg.probe.claimedLanguage : claimed, in);
    writeText(dir / "records.tsv", r.tsv());
    summary = r.summary();
  }
  writeText(dir / "summary.txt", summary);
  writeProvenance(dir, cfg);
  out << summary;
  return kExitOk;
}

// -------------------------------------------------------------------- inspect

int inspect(const ExperimentConfig& cfg, const std::string& model, std::string utteranceId,
            std::optional<int> beamWidth, std::ostream& out) {
  const CorpusSplits corpus = requireCorpus(cfg);
  const LoadedModel m = loadModel(cfg, model, corpus);
  const Utterance* utt = nullptr;
  if (utteranceId.empty()) {
    for (const auto* u : corpus.test.ofLanguage(m.checkpoint.languages.ids().front())) {
      utt = u;
      break;
    }
  } else {
    for (Split s : {Split::kTrain, Split::kValidation, Split::kTest}) {
      if (!utt) utt = corpus.split(s).find(utteranceId);
    }
  }
  if (!utt) throw ConfigError("no utterance '" + utteranceId + "' in the corpus");
  BeamConfig beam = cfg.decode;
  if (beamWidth) beam.beamWidth = *beamWidth;
  beam.keepAlignment = true;
  beam.validate();
  const Example e =
      makeExample(*utt, m.vocab, m.checkpoint.stackWindow, m.checkpoint.stackStride);
  const LasModel las = m.checkpoint.model();
  const Hypothesis h = decode(las, e.features, e.language, beam);

  std::string tsv = "# utterance=" + utt->id + " model=" + model +
                    " seed=" + std::to_string(cfg.seed) + "\n# reference=" + utt->transcript +
                    "\n# hypothesis=" + m.vocab.decode(h.content()) +
                    "\n# log_prob=" + formatDouble(h.logProb) +
                    (h.truncated ? " status=max-length" : " status=eos") + "\nstep\ttoken";
  for (std::size_t k = 0; k < e.features.length(); ++k) tsv += "\tframe" + std::to_string(k);
  tsv += "\n";
  for (std::size_t t = 0; t < h.alignment.size(); ++t) {
    tsv += std::to_string(t) + "\t" + m.vocab.token(h.tokens[t]);
    for (double a : h.alignment[t]) tsv += "\t" + fmt("%.6f", a);
    tsv += "\n";
  }
  std::string name = model;
  std::replace(name.begin(), name.end(), '/', '_');
  const fs::path path = cfg.outputDir / "inspect" / name / (utt->id + ".tsv");
  {
    DirectoryLock lock(cfg.outputDir);
    writeText(path, tsv);
  }
  out << tsv << "attention written to " << path.string() << "\n";
  return kExitOk;
}

void addCommon(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("config", flags.config, "Experiment config (JSON)")->required();
  cmd->add_option("--output-dir", flags.outputDir, "Override output_dir from the config");
  cmd->add_option("--set", flags.overrides,
                  "Override a config field, e.g. --set train.max_steps=100 (repeatable)");
}

}  // namespace

int exitCodeFor(const std::exception& e) {
  if (dynamic_cast<const DivergedError*>(&e)) return kExitDiverged;
  if (dynamic_cast<const FingerprintError*>(&e)) return kExitFingerprint;
  if (dynamic_cast<const VariantError*>(&e)) return kExitVariant;
  if (dynamic_cast<const IoError*>(&e) || dynamic_cast<const FormatError*>(&e) ||
      dynamic_cast<const CoverageError*>(&e)) {
    return kExitIo;
  }
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InvalidSpec*>(&e) ||
      dynamic_cast<const RegistryError*>(&e) || dynamic_cast<const GeneratorError*>(&e)) {
    return kExitConfig;
  }
  return kExitFailure;
}

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{
      "mlas: multilingual attention-based speech recognition on synthetic corpora.\n\n"
      "Exit codes: 0 ok, 1 unexpected failure, 2 config error, 3 I/O or format error,\n"
      "4 training diverged, 5 checkpoint/corpus vocabulary fingerprint mismatch,\n"
      "6 command not applicable to the model variant.",
      "mlas"};
  app.require_subcommand(1);
  CommonFlags flags;

  auto* gen = app.add_subcommand("gen-corpus", "Generate the synthetic corpus into <out>/corpus");
  addCommon(gen, flags);

  auto* tr = app.add_subcommand("train", "Train one variant or the monolingual suite");
  addCommon(tr, flags);
  std::string variant = "joint";
  std::string language;
  std::optional<double> lambda;
  bool resume = false;
  tr->add_option("--variant", variant,
                 "joint, mtl, cond-enc, cond-dec, cond-enc-dec or monolingual");
  tr->add_option("--language", language, "Monolingual suite: 'all' or comma-separated ids");
  tr->add_option("--lambda", lambda, "mtl weight of the language-id loss");
  tr->add_flag("--resume", resume, "Continue from the saved checkpoint");

  auto* ev = app.add_subcommand("eval", "Decode a split and score WER/CER and script confusion");
  addCommon(ev, flags);
  std::vector<std::string> models;
  std::string split = "test";
  std::optional<int> beam;
  std::vector<int> sweep;
  std::string hypotheses;
  ev->add_option("--model", models,
                 "Model(s) to compare: a variant name or 'monolingual' (repeatable)")
      ->delimiter(',');
  ev->add_option("--split", split, "train, validation or test");
  ev->add_option("--beam", beam, "Beam width (default from config)");
  ev->add_option("--beam-sweep", sweep, "Comma-separated beam widths to sweep")->delimiter(',');
  ev->add_option("--hypotheses", hypotheses, "Score this hypothesis dump instead of decoding");

  auto* pr = app.add_subcommand("probe", "Run the code-switch or mismatched-id probe");
  addCommon(pr, flags);
  std::string kind;
  std::string probeModel;
  std::optional<int> count;
  std::string pair, speech, claimed;
  pr->add_option("--kind", kind, "code-switch or mismatched-id")->required();
  pr->add_option("--model", probeModel, "Variant to probe (default joint / cond-enc)");
  pr->add_option("--count", count, "Number of probe utterances");
  pr->add_option("--pair", pair, "code-switch: languages A,B");
  pr->add_option("--speech", speech, "mismatched-id: language of the audio");
  pr->add_option("--claimed", claimed, "mismatched-id: language id given to the model");

  auto* in = app.add_subcommand("inspect", "Dump the attention matrix for one utterance");
  addCommon(in, flags);
  std::string inspectModel = "joint";
  std::string utterance;
  std::optional<int> inspectBeam;
  in->add_option("--model", inspectModel, "Variant, or monolingual/<id>");
  in->add_option("--utterance", utterance, "Utterance id (default: first test utterance)");
  in->add_option("--beam", inspectBeam, "Beam width");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "mlas: " << e.what() << "\n" << "run 'mlas --help' for usage\n";
    return kExitConfig;
  }

  try {
    const ExperimentConfig cfg = loadConfig(flags);
    if (gen->parsed()) return genCorpus(cfg, out);
    if (tr->parsed()) return train(cfg, variant, language, lambda, resume, out);
    if (ev->parsed()) return eval(cfg, models, split, beam, sweep, hypotheses, out);
    if (pr->parsed()) return probe(cfg, kind, probeModel, count, pair, speech, claimed, out);
    if (in->parsed()) return inspect(cfg, inspectModel, utterance, inspectBeam, out);
  } catch (const DivergedError& e) {
    err << "mlas: training diverged at step " << e.step() << ": " << e.what() << "\n";
    return kExitDiverged;
  } catch (const std::exception& e) {
    err << "mlas: " << e.what() << "\n";
    return exitCodeFor(e);
  }
  return kExitFailure;
}

}  // namespace mlas
