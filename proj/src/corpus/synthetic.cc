// mlas/corpus/synthetic.cc
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

#include "mlas/corpus/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#include "mlas/common/errors.h"
#include "mlas/common/hash.h"
#include "mlas/common/utf8.h"

namespace mlas {

namespace {

constexpr int kMaxMeanDraws = 100000;
constexpr int kMaxLexiconDraws = 1000;

struct ScriptTable {
  const char* name;
  std::vector<char32_t> letters;
};

std::vector<char32_t> contiguous(char32_t first, int n) {
  std::vector<char32_t> out(n);
  std::iota(out.begin(), out.end(), first);
  return out;
}

const std::vector<ScriptTable>& scriptTables() {
  static const std::vector<ScriptTable> tables = {
      {"devanagari", contiguous(0x0915, 20)},
      {"bengali", contiguous(0x0995, 20)},
      {"gujarati", contiguous(0x0A95, 20)},
      {"telugu", contiguous(0x0C15, 20)},
      {"kannada", contiguous(0x0C95, 20)},
      {"malayalam", contiguous(0x0D15, 20)},
      {"tamil", utf8::decode("கஙசஜஞடணதநனபமயரறலளழவஸ")},
      {"arabic", utf8::decode("بتثجحخدذرزسشصضطظعغفق")},
      {"latin", contiguous(U'a', 20)},
  };
  return tables;
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

void requireRange(int lo, int hi, int floor, const std::string& what) {
  if (lo < floor || hi < lo) {
    throw ConfigError(what + " range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                      "] is invalid");
  }
}

std::vector<std::string> sampleLexicon(const std::vector<std::string>& graphemes, int size,
                                       int minLength, int maxLength, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> length(minLength, maxLength);
  std::uniform_int_distribution<std::size_t> pick(0, graphemes.size() - 1);
  for (int attempt = 0; attempt < kMaxLexiconDraws; ++attempt) {
    std::set<std::string> seen;
    std::vector<std::string> words;
    int draws = 0;
    while (static_cast<int>(words.size()) < size && draws++ < 100 * size) {
      std::string word;
      for (int k = length(rng); k > 0; --k) word += graphemes[pick(rng)];
      if (seen.insert(word).second) words.push_back(std::move(word));
    }
    if (static_cast<int>(words.size()) < size) break;
    std::set<std::string> used;
    for (const auto& w : words) {
      for (const auto& g : utf8::split(w)) used.insert(g);
    }
    if (used.size() == graphemes.size()) return words;
  }
  throw GeneratorError("cannot sample a lexicon of " + std::to_string(size) +
                       " distinct words covering all graphemes");
}

SyntheticLanguage makeLanguage(LanguageSpec spec, const CorpusConfig& config,
                               std::size_t speechPhones, std::uint64_t seed) {
  SyntheticLanguage lang;
  lang.spec = std::move(spec);
  lang.minWordLength = config.minWordLength;
  lang.maxWordLength = config.maxWordLength;
  lang.lexiconSize = config.lexiconSize;

  std::mt19937_64 g2pRng(deriveSeed(seed, "g2p/" + lang.spec.id));
  std::vector<int> phones(speechPhones);
  std::iota(phones.begin(), phones.end(), 0);
  std::shuffle(phones.begin(), phones.end(), g2pRng);
  for (std::size_t i = 0; i < lang.spec.graphemes.size(); ++i) {
    lang.graphemeToPhone[lang.spec.graphemes[i]] = phones[i];
  }

  std::mt19937_64 lexRng(deriveSeed(seed, "lexicon/" + lang.spec.id));
  lang.lexicon = sampleLexicon(lang.spec.graphemes, config.lexiconSize, config.minWordLength,
                               config.maxWordLength, lexRng);
  return lang;
}

// Re-renders `source` in `spec`'s script: grapheme i of one maps to grapheme
// i of the other, and both to the same phone.
SyntheticLanguage transliterate(const SyntheticLanguage& source, LanguageSpec spec) {
  std::map<std::string, std::string> rewrite;
  for (std::size_t i = 0; i < spec.graphemes.size(); ++i) {
    rewrite[source.spec.graphemes[i]] = spec.graphemes[i];
  }
  SyntheticLanguage lang = source;
  lang.spec = std::move(spec);
  lang.transliterationOf = source.spec.id;
  lang.graphemeToPhone.clear();
  for (const auto& [from, to] : rewrite) {
    lang.graphemeToPhone[to] = source.graphemeToPhone.at(from);
  }
  for (auto& word : lang.lexicon) {
    std::string out;
    for (const auto& g : utf8::split(word)) out += rewrite.at(g);
    word = std::move(out);
  }
  return lang;
}

}  // namespace

void PhoneInventoryConfig::validate() const {
  if (featureDim < 1) throw ConfigError("feature dimension must be >= 1");
  if (speechPhones < 1) throw ConfigError("need at least one speech phone");
  if (!(noiseStddev > 0.0) || !std::isfinite(noiseStddev)) {
    throw ConfigError("noise stddev must be positive");
  }
  if (!(separationSigmas >= kMinPhoneSeparationSigmas)) {
    throw ConfigError("phone separation must be at least 4 noise stddevs");
  }
  requireRange(minDuration, maxDuration, 1, "phone duration");
  requireRange(silenceMinDuration, silenceMaxDuration, 1, "silence duration");
  if (!(framePeriodMs > 0.0)) throw ConfigError("frame period must be positive");
}

PhoneInventory::PhoneInventory(std::vector<PhoneModel> phones, double framePeriodMs)
    : phones_(std::move(phones)), framePeriodMs_(framePeriodMs) {
  if (phones_.size() < 2) throw GeneratorError("inventory needs a speech phone and silence");
  const std::size_t dim = phones_[0].mean.size();
  for (const auto& p : phones_) {
    if (p.mean.size() != dim || dim == 0) throw GeneratorError("phone means differ in size");
    if (p.minDuration < 1 || p.maxDuration < p.minDuration || !(p.noiseStddev > 0.0)) {
      throw GeneratorError("phone '" + p.id + "' has an invalid duration or noise");
    }
  }
  for (std::size_t i = 0; i < phones_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double sigma = std::max(phones_[i].noiseStddev, phones_[j].noiseStddev);
      if (distance(phones_[i].mean, phones_[j].mean) < kMinPhoneSeparationSigmas * sigma) {
        throw GeneratorError("phones '" + phones_[j].id + "' and '" + phones_[i].id +
                             "' are not separable");
      }
    }
  }
}

PhoneInventory PhoneInventory::generate(const PhoneInventoryConfig& config,
                                        std::uint64_t seed) {
  config.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  const double target = config.separationSigmas * config.noiseStddev;

  std::vector<PhoneModel> phones;
  const int total = config.speechPhones + 1;
  for (int p = 0; p < total; ++p) {
    PhoneModel model;
    const bool silence = p == total - 1;
    char name[16];
    std::snprintf(name, sizeof(name), "p%02d", p);
    model.id = silence ? "sil" : name;
    model.minDuration = silence ? config.silenceMinDuration : config.minDuration;
    model.maxDuration = silence ? config.silenceMaxDuration : config.maxDuration;
    model.noiseStddev = config.noiseStddev;
    model.mean.resize(config.featureDim);
    bool placed = false;
    for (int draw = 0; draw < kMaxMeanDraws && !placed; ++draw) {
      for (double& v : model.mean) v = coord(rng);
      placed = std::all_of(phones.begin(), phones.end(), [&](const PhoneModel& other) {
        return distance(model.mean, other.mean) >= target;
      });
    }
    if (!placed) {
      throw GeneratorError("cannot place " + std::to_string(total) +
                           " phone means at the requested separation");
    }
    phones.push_back(std::move(model));
  }
  return PhoneInventory(std::move(phones), config.framePeriodMs);
}

double PhoneInventory::minMeanDistance() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < phones_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      best = std::min(best, distance(phones_[i].mean, phones_[j].mean));
    }
  }
  return best;
}

int PhoneInventory::nearest(std::span<const double> frame) const {
  if (frame.size() != featureDim()) throw ShapeError("frame dimension mismatch");
  int best = 0;
  double bestDistance = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < phones_.size(); ++p) {
    const double d = distance(frame, phones_[p].mean);
    if (d < bestDistance) {
      bestDistance = d;
      best = static_cast<int>(p);
    }
  }
  return best;
}

std::vector<int> SyntheticLanguage::phonesOf(std::string_view word) const {
  std::vector<int> out;
  for (const auto& g : utf8::split(word)) {
    auto it = graphemeToPhone.find(g);
    if (it == graphemeToPhone.end()) {
      throw GeneratorError("language '" + spec.id + "' has no phone for grapheme '" + g + "'");
    }
    out.push_back(it->second);
  }
  return out;
}

std::vector<std::string> knownScripts() {
  std::vector<std::string> out;
  for (const auto& t : scriptTables()) out.emplace_back(t.name);
  return out;
}

std::vector<std::string> scriptGraphemes(std::string_view script, int count) {
  for (const auto& t : scriptTables()) {
    if (script != t.name) continue;
    if (count < 1 || count > static_cast<int>(t.letters.size())) {
      throw ConfigError("script '" + std::string(script) + "' offers 1.." +
                        std::to_string(t.letters.size()) + " graphemes");
    }
    std::vector<std::string> out;
    for (int i = 0; i < count; ++i) out.push_back(utf8::encode(t.letters[i]));
    return out;
  }
  throw ConfigError("unknown script '" + std::string(script) + "'");
}

void CorpusConfig::validate() const {
  phones.validate();
  if (languages.empty()) throw ConfigError("corpus needs at least one language");
  requireRange(minWordLength, maxWordLength, 1, "word length");
  requireRange(minWords, maxWords, 1, "words per utterance");
  if (lexiconSize < 1) throw ConfigError("lexicon size must be >= 1");
  if (!(borrowedFraction >= 0.0 && borrowedFraction <= 1.0)) {
    throw ConfigError("borrowed fraction must lie in [0, 1]");
  }
  std::set<std::string> ids;
  std::set<std::string> scripts;
  for (const auto& l : languages) {
    if (l.id.empty()) throw ConfigError("language id is empty");
    if (!ids.insert(l.id).second) throw ConfigError("duplicate language '" + l.id + "'");
    if (l.trainCount < 1 || l.validationCount < 1 || l.testCount < 1) {
      throw ConfigError("language '" + l.id + "': every split needs at least one utterance");
    }
    scriptGraphemes(l.script, l.graphemeCount);
    if (l.graphemeCount > phones.speechPhones) {
      throw ConfigError("language '" + l.id + "' has more graphemes than speech phones");
    }
    if (!scripts.insert(l.script).second) {
      throw ConfigError("language '" + l.id + "' reuses script '" + l.script + "'");
    }
  }
  if (borrowedFraction > 0.0) {
    if (ids.count(borrowedLanguageId)) {
      throw ConfigError("borrowed language id '" + borrowedLanguageId + "' is taken");
    }
    if (scripts.count(borrowedScript)) {
      throw ConfigError("borrowed script '" + borrowedScript + "' is taken");
    }
    scriptGraphemes(borrowedScript, std::min(12, phones.speechPhones));
  }
  for (const auto& l : languages) {
    if (l.transliterationOf.empty()) continue;
    auto src = std::find_if(languages.begin(), languages.end(),
                            [&](const LanguageConfig& c) { return c.id == l.transliterationOf; });
    if (src == languages.end() || !src->transliterationOf.empty()) {
      throw ConfigError("language '" + l.id + "': transliteration source '" +
                        l.transliterationOf + "' is not a plain configured language");
    }
    if (src->graphemeCount != l.graphemeCount) {
      throw ConfigError("language '" + l.id + "' must match its source's grapheme count");
    }
    if (l.trainCount > src->trainCount || l.validationCount > src->validationCount ||
        l.testCount > src->testCount) {
      throw ConfigError("language '" + l.id + "' cannot have more utterances than its source");
    }
  }
}

CorpusConfig CorpusConfig::toy() {
  CorpusConfig c;
  c.languages = {
      {"hi", "Hindi (synthetic)", "devanagari", 12, "", 200, 40, 40},
      {"ta", "Tamil (synthetic)", "tamil", 12, "", 200, 40, 40},
      {"bn", "Bengali (synthetic)", "bengali", 12, "", 200, 40, 40},
  };
  return c;
}

CorpusConfig CorpusConfig::transliterationToy() {
  CorpusConfig c;
  c.languages = {
      {"hi", "Hindi (synthetic)", "devanagari", 12, "", 200, 40, 40},
      {"ur", "Urdu (synthetic)", "arabic", 12, "hi", 200, 40, 40},
      {"ta", "Tamil (synthetic)", "tamil", 12, "", 200, 40, 40},
  };
  return c;
}

const SyntheticLanguage& SyntheticWorld::language(std::string_view id) const {
  for (const auto& l : languages) {
    if (l.spec.id == id) return l;
  }
  if (borrowed && borrowed->spec.id == id) return *borrowed;
  throw RegistryError("unknown language '" + std::string(id) + "'");
}

LanguageRegistry SyntheticWorld::registry() const {
  LanguageRegistry out;
  for (const auto& l : languages) out.add(l.spec);
  if (borrowed) out.add(borrowed->spec);
  return out;
}

SyntheticWorld buildWorld(const CorpusConfig& config, std::uint64_t seed) {
  config.validate();
  SyntheticWorld world;
  world.phones = PhoneInventory::generate(config.phones, deriveSeed(seed, "phones"));
  const std::size_t speech = world.phones.speechPhones();

  auto specOf = [](const LanguageConfig& l) {
    return LanguageSpec{l.id, l.displayName, scriptGraphemes(l.script, l.graphemeCount)};
  };
  std::map<std::string, SyntheticLanguage> plain;
  for (const auto& l : config.languages) {
    if (l.transliterationOf.empty()) {
      plain.emplace(l.id, makeLanguage(specOf(l), config, speech, seed));
    }
  }
  for (const auto& l : config.languages) {
    world.languages.push_back(l.transliterationOf.empty()
                                  ? plain.at(l.id)
                                  : transliterate(plain.at(l.transliterationOf), specOf(l)));
  }
  if (config.borrowedFraction > 0.0) {
    const int count = std::min(12, config.phones.speechPhones);
    LanguageSpec spec{config.borrowedLanguageId, "Borrowed words",
                      scriptGraphemes(config.borrowedScript, count)};
    world.borrowed = makeLanguage(std::move(spec), config, speech, seed);
  }
  return world;
}

Utterance generateUtterance(const SyntheticLanguage& language, const PhoneInventory& phones,
                            int wordCount, const UtteranceSeeds& seeds,
                            BorrowedWords borrowed) {
  if (wordCount < 1) throw InvalidArgument("word count must be >= 1");
  if (language.lexicon.empty()) {
    throw InvalidArgument("language '" + language.spec.id + "' has no lexicon");
  }
  const bool borrowing = borrowed.language != nullptr && borrowed.fraction > 0.0;
  if (borrowing && borrowed.language->lexicon.empty()) {
    throw InvalidArgument("borrowed-word lexicon is empty");
  }

  std::mt19937_64 content(seeds.content);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::string> words;
  std::vector<int> alignment;
  auto emit = [&](int phone) {
    const PhoneModel& model = phones.at(phone);
    std::uniform_int_distribution<int> duration(model.minDuration, model.maxDuration);
    alignment.insert(alignment.end(), duration(content), phone);
  };
  for (int w = 0; w < wordCount; ++w) {
    const SyntheticLanguage* source = &language;
    if (borrowing && coin(content) < borrowed.fraction) source = borrowed.language;
    std::uniform_int_distribution<std::size_t> pick(0, source->lexicon.size() - 1);
    const std::string& word = source->lexicon[pick(content)];
    if (w > 0) emit(phones.silence());
    for (int phone : source->phonesOf(word)) {
      if (phone < 0 || phone >= phones.silence()) {
        throw GeneratorError("grapheme maps outside the speech phones");
      }
      emit(phone);
    }
    words.push_back(word);
  }

  const std::size_t dim = phones.featureDim();
  Utterance u;
  u.language = language.spec.id;
  for (std::size_t w = 0; w < words.size(); ++w) {
    u.transcript += (w ? " " : "") + words[w];
  }
  u.features.framePeriodMs = phones.framePeriodMs();
  u.features.frames = Tensor::matrix(alignment.size(), dim);
  std::mt19937_64 noise(seeds.noise);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t t = 0; t < alignment.size(); ++t) {
    const PhoneModel& model = phones.at(alignment[t]);
    auto row = u.features.frames.row(t);
    for (std::size_t d = 0; d < dim; ++d) {
      row[d] = static_cast<float>(model.mean[d] + model.noiseStddev * gauss(noise));
    }
  }
  u.phoneAlignment = std::move(alignment);
  return u;
}

Utterance generateUtterance(const SyntheticLanguage& language, const PhoneInventory& phones,
                            int wordCount, std::uint64_t seed) {
  return generateUtterance(language, phones, wordCount,
                           {deriveSeed(seed, "content"), deriveSeed(seed, "noise")});
}

std::vector<const Utterance*> Corpus::ofLanguage(std::string_view id) const {
  std::vector<const Utterance*> out;
  for (const auto& u : utterances) {
    if (u.language == id) out.push_back(&u);
  }
  return out;
}

const Utterance* Corpus::find(std::string_view id) const {
  for (const auto& u : utterances) {
    if (u.id == id) return &u;
  }
  return nullptr;
}

std::string_view splitName(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kValidation:
      return "validation";
    case Split::kTest:
      return "test";
  }
  return {};
}

Split parseSplit(std::string_view name) {
  for (Split s : {Split::kTrain, Split::kValidation, Split::kTest}) {
    if (splitName(s) == name) return s;
  }
  throw FormatError("unknown split '" + std::string(name) + "'");
}

const Corpus& CorpusSplits::split(Split s) const {
  switch (s) {
    case Split::kTrain:
      return train;
    case Split::kValidation:
      return validation;
    case Split::kTest:
      break;
  }
  return test;
}

Corpus& CorpusSplits::split(Split s) {
  return const_cast<Corpus&>(static_cast<const CorpusSplits&>(*this).split(s));
}

std::string utteranceId(std::string_view language, Split split, int index) {
  char num[16];
  std::snprintf(num, sizeof(num), "%05d", index);
  return std::string(language) + "-" + std::string(splitName(split)) + "-" + num;
}

CorpusSplits buildCorpus(const CorpusConfig& config, std::uint64_t seed) {
  const SyntheticWorld world = buildWorld(config, seed);
  CorpusSplits out;
  out.registry = world.registry();
  out.seed = seed;
  out.framePeriodMs = config.phones.framePeriodMs;
  out.silenceFrame = world.phones.at(world.phones.silence()).mean;

  const BorrowedWords borrowed{world.borrowed ? &*world.borrowed : nullptr,
                               config.borrowedFraction};
  std::uniform_int_distribution<int> wordCount(config.minWords, config.maxWords);
  for (Split s : {Split::kTrain, Split::kValidation, Split::kTest}) {
    Corpus& corpus = out.split(s);
    for (std::size_t l = 0; l < config.languages.size(); ++l) {
      const LanguageConfig& lc = config.languages[l];
      const int count = s == Split::kTrain        ? lc.trainCount
                        : s == Split::kValidation ? lc.validationCount
                                                  : lc.testCount;
      const std::string& root = lc.transliterationOf.empty() ? lc.id : lc.transliterationOf;
      for (int i = 0; i < count; ++i) {
        const std::string id = utteranceId(lc.id, s, i);
        const std::uint64_t content = deriveSeed(seed, "content/" + utteranceId(root, s, i));
        std::mt19937_64 countRng(deriveSeed(content, "count"));
        Utterance u = generateUtterance(world.languages[l], world.phones, wordCount(countRng),
                                        {content, deriveSeed(seed, "noise/" + id)}, borrowed);
        u.id = id;
        corpus.utterances.push_back(std::move(u));
      }
    }
  }
  return out;
}

}  // namespace mlas
