// mlas/cli/experiment.cc
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

#include "mlas/cli/experiment.h"

#include <set>

#include "mlas/common/errors.h"
#include "mlas/common/fileio.h"

namespace mlas {

namespace {

using nlohmann::json;

// Typed access to one JSON object; finish() rejects keys never read.
class Section {
 public:
  Section(const json& doc, std::string path) : doc_(doc), path_(std::move(path)) {
    if (!doc_.is_object()) throw ConfigError(where() + " must be an object");
  }

  bool has(const std::string& key) const { return doc_.contains(key); }
  std::string pathOf(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json* raw(const std::string& key) {
    used_.insert(key);
    return doc_.contains(key) ? &doc_.at(key) : nullptr;
  }

  void integer(const std::string& key, int& out, int min) {
    std::int64_t v = out;
    integer64(key, v, min);
    out = static_cast<int>(v);
  }

  void integer64(const std::string& key, std::int64_t& out, std::int64_t min) {
    const json* v = raw(key);
    if (!v) return;
    if (!v->is_number_integer()) throw ConfigError(pathOf(key) + " must be an integer");
    const auto x = v->get<std::int64_t>();
    if (x < min) {
      throw ConfigError(pathOf(key) + " must be >= " + std::to_string(min));
    }
    out = x;
  }

  void unsigned64(const std::string& key, std::uint64_t& out) {
    const json* v = raw(key);
    if (!v) return;
    if (!v->is_number_unsigned()) {
      throw ConfigError(pathOf(key) + " must be a nonnegative integer");
    }
    out = v->get<std::uint64_t>();
  }

  void number(const std::string& key, double& out) {
    const json* v = raw(key);
    if (!v) return;
    if (!v->is_number()) throw ConfigError(pathOf(key) + " must be a number");
    out = v->get<double>();
  }

  void string(const std::string& key, std::string& out) {
    const json* v = raw(key);
    if (!v) return;
    if (!v->is_string()) throw ConfigError(pathOf(key) + " must be a string");
    out = v->get<std::string>();
  }

  void boolean(const std::string& key, bool& out) {
    const json* v = raw(key);
    if (!v) return;
    if (!v->is_boolean()) throw ConfigError(pathOf(key) + " must be true or false");
    out = v->get<bool>();
  }

  void finish() const {
    for (const auto& [key, _] : doc_.items()) {
      if (!used_.count(key)) throw ConfigError("unknown key '" + pathOf(key) + "'");
    }
  }

 private:
  std::string where() const { return path_.empty() ? "experiment config" : path_; }

  const json& doc_;
  std::string path_;
  std::set<std::string> used_;
};

void readPhones(Section s, PhoneInventoryConfig& p) {
  s.integer("feature_dim", p.featureDim, 1);
  s.integer("speech_phones", p.speechPhones, 1);
  s.number("noise_stddev", p.noiseStddev);
  s.number("separation_sigmas", p.separationSigmas);
  s.integer("min_duration", p.minDuration, 1);
  s.integer("max_duration", p.maxDuration, 1);
  s.integer("silence_min_duration", p.silenceMinDuration, 1);
  s.integer("silence_max_duration", p.silenceMaxDuration, 1);
  s.number("frame_period_ms", p.framePeriodMs);
  s.finish();
}

LanguageConfig readLanguage(Section s) {
  LanguageConfig l;
  if (!s.has("id")) throw ConfigError(s.pathOf("id") + " is required");
  if (!s.has("script")) throw ConfigError(s.pathOf("script") + " is required");
  s.string("id", l.id);
  l.displayName = l.id;
  s.string("display_name", l.displayName);
  s.string("script", l.script);
  s.integer("graphemes", l.graphemeCount, 1);
  s.string("transliteration_of", l.transliterationOf);
  s.integer("train", l.trainCount, 0);
  s.integer("validation", l.validationCount, 0);
  s.integer("test", l.testCount, 0);
  s.finish();
  return l;
}

void readCorpus(Section s, CorpusConfig& c) {
  std::string preset = "toy";
  s.string("preset", preset);
  if (preset == "toy") {
    c = CorpusConfig::toy();
  } else if (preset == "transliteration-toy") {
    c = CorpusConfig::transliterationToy();
  } else {
    throw ConfigError(s.pathOf("preset") + " must be 'toy' or 'transliteration-toy'");
  }
  s.integer("lexicon_size", c.lexiconSize, 1);
  s.integer("min_word_length", c.minWordLength, 1);
  s.integer("max_word_length", c.maxWordLength, 1);
  s.integer("min_words", c.minWords, 1);
  s.integer("max_words", c.maxWords, 1);
  s.number("borrowed_fraction", c.borrowedFraction);
  s.string("borrowed_script", c.borrowedScript);
  s.string("borrowed_language", c.borrowedLanguageId);
  if (const json* phones = s.raw("phones")) readPhones(Section(*phones, s.pathOf("phones")), c.phones);
  if (const json* langs = s.raw("languages")) {
    if (!langs->is_array()) throw ConfigError(s.pathOf("languages") + " must be an array");
    c.languages.clear();
    for (std::size_t i = 0; i < langs->size(); ++i) {
      c.languages.push_back(
          readLanguage(Section(langs->at(i), s.pathOf("languages") + "[" + std::to_string(i) + "]")));
    }
  }
  s.finish();
}

void readModel(Section s, ModelConfig& m, bool& inputDimGiven) {
  std::string variant = std::string(variantName(m.variant));
  s.string("variant", variant);
  try {
    m.variant = parseVariant(variant);
  } catch (const ConfigError& e) {
    throw ConfigError(s.pathOf("variant") + ": " + e.what());
  }
  inputDimGiven = s.has("input_dim");
  s.integer("input_dim", m.inputDim, 1);
  s.integer("encoder_layers", m.encoderLayers, 1);
  s.integer("encoder_width", m.encoderWidth, 1);
  s.integer("decoder_layers", m.decoderLayers, 1);
  s.integer("decoder_width", m.decoderWidth, 1);
  s.integer("attention_width", m.attentionWidth, 1);
  s.integer("char_embedding_dim", m.charEmbeddingDim, 1);
  s.integer("lang_embedding_dim", m.langEmbeddingDim, 1);
  s.number("lambda", m.lambda);
  s.number("init_scale", m.initScale);
  if (m.lambda < 0.0) throw ConfigError(s.pathOf("lambda") + " must be nonnegative");
  if (!(m.initScale > 0.0)) throw ConfigError(s.pathOf("init_scale") + " must be positive");
  s.finish();
}

void readDecode(Section s, BeamConfig& b) {
  s.integer("beam_width", b.beamWidth, 1);
  s.integer("max_decode_length", b.maxDecodeLength, 0);
  s.boolean("length_normalization", b.lengthNormalization);
  s.finish();
}

void readProbe(Section s, ProbeSettings& p) {
  s.integer("count", p.count, 1);
  if (const json* pair = s.raw("code_switch")) {
    if (!pair->is_array() || pair->size() != 2 || !pair->at(0).is_string() ||
        !pair->at(1).is_string()) {
      throw ConfigError(s.pathOf("code_switch") + " must be a pair of language ids");
    }
    p.codeSwitchA = pair->at(0).get<std::string>();
    p.codeSwitchB = pair->at(1).get<std::string>();
  }
  if (const json* m = s.raw("mismatched_id")) {
    Section inner(*m, s.pathOf("mismatched_id"));
    inner.string("speech", p.speechLanguage);
    inner.string("claimed", p.claimedLanguage);
    inner.finish();
  }
  s.finish();
}

void applyOverride(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + assignment + "' must look like section.key=value");
  }
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
    if (key.empty()) throw ConfigError("override '" + assignment + "' has an empty key");
    if (!node->is_object()) throw ConfigError("override '" + path + "' crosses a non-object");
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    if (!node->contains(key)) (*node)[key] = json::object();
    node = &(*node)[key];
    start = dot + 1;
  }
}

std::string syntaxLocation(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

json corpusJson(const CorpusConfig& c) {
  json langs = json::array();
  for (const auto& l : c.languages) {
    langs.push_back({{"id", l.id},
                     {"display_name", l.displayName},
                     {"script", l.script},
                     {"graphemes", l.graphemeCount},
                     {"transliteration_of", l.transliterationOf},
                     {"train", l.trainCount},
                     {"validation", l.validationCount},
                     {"test", l.testCount}});
  }
  const auto& p = c.phones;
  return {{"lexicon_size", c.lexiconSize},
          {"min_word_length", c.minWordLength},
          {"max_word_length", c.maxWordLength},
          {"min_words", c.minWords},
          {"max_words", c.maxWords},
          {"borrowed_fraction", c.borrowedFraction},
          {"borrowed_script", c.borrowedScript},
          {"borrowed_language", c.borrowedLanguageId},
          {"phones",
           {{"feature_dim", p.featureDim},
            {"speech_phones", p.speechPhones},
            {"noise_stddev", p.noiseStddev},
            {"separation_sigmas", p.separationSigmas},
            {"min_duration", p.minDuration},
            {"max_duration", p.maxDuration},
            {"silence_min_duration", p.silenceMinDuration},
            {"silence_max_duration", p.silenceMaxDuration},
            {"frame_period_ms", p.framePeriodMs}}},
          {"languages", langs}};
}

}  // namespace

json ExperimentConfig::toJson() const {
  json model_ = model.toJson();
  model_.erase("vocab_size");
  model_.erase("num_languages");
  model_["lambda"] = model.lambda;
  model_["lang_embedding_dim"] = model.langEmbeddingDim;
  json train_ = train.toJson();
  train_.erase("seed");
  train_["monolingual_noise_stddev"] = monolingualNoiseStddev;
  return {{"seed", seed},
          {"output_dir", outputDir.generic_string()},
          {"corpus", corpusJson(corpus)},
          {"features", {{"window", stackWindow}, {"stride", stackStride}}},
          {"model", model_},
          {"train", train_},
          {"decode",
           {{"beam_width", decode.beamWidth},
            {"max_decode_length", decode.maxDecodeLength},
            {"length_normalization", decode.lengthNormalization}}},
          {"probe",
           {{"count", probe.count},
            {"code_switch", {probe.codeSwitchA, probe.codeSwitchB}},
            {"mismatched_id",
             {{"speech", probe.speechLanguage}, {"claimed", probe.claimedLanguage}}}}}};
}

ExperimentConfig ExperimentConfig::parse(std::string_view text,
                                         const std::vector<std::string>& overrides) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("experiment config syntax error at " + syntaxLocation(text, e.byte) +
                      ": " + e.what());
  }
  for (const auto& o : overrides) applyOverride(doc, o);

  ExperimentConfig c;
  Section top(doc, "");
  top.unsigned64("seed", c.seed);
  std::string out = c.outputDir.string();
  top.string("output_dir", out);
  if (out.empty()) throw ConfigError("output_dir must not be empty");
  c.outputDir = out;
  if (const json* s = top.raw("corpus")) readCorpus(Section(*s, "corpus"), c.corpus);
  if (const json* s = top.raw("features")) {
    Section f(*s, "features");
    f.integer("window", c.stackWindow, 1);
    f.integer("stride", c.stackStride, 1);
    f.finish();
  }
  bool inputDimGiven = false;
  if (const json* s = top.raw("model")) readModel(Section(*s, "model"), c.model, inputDimGiven);
  if (const json* s = top.raw("train")) {
    json t = *s;
    if (!t.is_object()) throw ConfigError("train must be an object");
    if (t.contains("seed")) throw ConfigError("train.seed is not allowed; set the top-level seed");
    if (t.contains("monolingual_noise_stddev")) {
      if (!t["monolingual_noise_stddev"].is_number()) {
        throw ConfigError("train.monolingual_noise_stddev must be a number");
      }
      c.monolingualNoiseStddev = t["monolingual_noise_stddev"].get<double>();
      t.erase("monolingual_noise_stddev");
    }
    c.train = TrainConfig::fromJson(t);
  }
  if (const json* s = top.raw("decode")) readDecode(Section(*s, "decode"), c.decode);
  if (const json* s = top.raw("probe")) readProbe(Section(*s, "probe"), c.probe);
  top.finish();

  c.train.seed = c.seed;
  c.corpus.validate();
  c.train.validate();
  if (!(c.monolingualNoiseStddev >= 0.0)) {
    throw ConfigError("train.monolingual_noise_stddev must be nonnegative");
  }
  const int stackedDim = c.corpus.phones.featureDim * c.stackWindow;
  if (!inputDimGiven) {
    c.model.inputDim = stackedDim;
  } else if (c.model.inputDim != stackedDim) {
    throw ConfigError("model.input_dim is " + std::to_string(c.model.inputDim) +
                      " but corpus.phones.feature_dim * features.window is " +
                      std::to_string(stackedDim));
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path,
                                        const std::vector<std::string>& overrides) {
  const std::string text = readFile(path);
  try {
    return parse(text, overrides);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace mlas
