// mlas/corpus/synthetic.h
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

// Synthetic multilingual speech corpus. Languages share one inventory of
// Gaussian "phones" but write them with disjoint scripts, so acoustics carry
// no information about the script beyond what the lexicon implies.

#ifndef MLAS_CORPUS_SYNTHETIC_H_
#define MLAS_CORPUS_SYNTHETIC_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mlas/corpus/features.h"
#include "mlas/langpack/registry.h"

namespace mlas {

// Distinct phone means are at least this many noise stddevs apart.
inline constexpr double kMinPhoneSeparationSigmas = 4.0;

struct PhoneModel {
  std::string id;
  std::vector<double> mean;
  int minDuration = 3;  // frames, inclusive
  int maxDuration = 5;
  double noiseStddev = 0.3;

  friend bool operator==(const PhoneModel&, const PhoneModel&) = default;
};

struct PhoneInventoryConfig {
  int featureDim = 8;
  // Phones graphemes may map to; one silence phone is added on top.
  int speechPhones = 13;
  double noiseStddev = 0.3;
  // Rejection-sampling target for mean separation; must be >= 4.
  double separationSigmas = 6.0;
  int minDuration = 3;
  int maxDuration = 5;
  int silenceMinDuration = 2;
  int silenceMaxDuration = 4;
  double framePeriodMs = 10.0;

  void validate() const;  // throws ConfigError
};

// Speech phones first, silence last.
class PhoneInventory {
 public:
  PhoneInventory() = default;
  // Throws GeneratorError when two means are closer than
  // kMinPhoneSeparationSigmas * noise stddev, or on inconsistent dimensions.
  PhoneInventory(std::vector<PhoneModel> phones, double framePeriodMs);

  // Means uniform in [-1, 1]^F, each redrawn until it clears the separation
  // target against all previous means.
  static PhoneInventory generate(const PhoneInventoryConfig& config, std::uint64_t seed);

  std::size_t size() const { return phones_.size(); }
  std::size_t speechPhones() const { return phones_.size() - 1; }
  int silence() const { return static_cast<int>(phones_.size()) - 1; }
  const PhoneModel& at(int phone) const { return phones_.at(phone); }
  const std::vector<PhoneModel>& phones() const { return phones_; }
  std::size_t featureDim() const { return phones_.empty() ? 0 : phones_[0].mean.size(); }
  double framePeriodMs() const { return framePeriodMs_; }

  double minMeanDistance() const;
  // Index of the phone whose mean is nearest to `frame`.
  int nearest(std::span<const double> frame) const;

 private:
  std::vector<PhoneModel> phones_;
  double framePeriodMs_ = 10.0;
};

struct SyntheticLanguage {
  LanguageSpec spec;
  // Injective; values index speech phones of the shared inventory.
  std::map<std::string, int> graphemeToPhone;
  int minWordLength = 2;
  int maxWordLength = 5;
  int lexiconSize = 30;
  std::vector<std::string> lexicon;
  // Id of the language whose lexicon this one re-renders, or empty.
  std::string transliterationOf;

  // Phones of a word. Throws GeneratorError for a grapheme without mapping.
  std::vector<int> phonesOf(std::string_view word) const;
};

// Named grapheme tables: "devanagari", "bengali", "gujarati", "telugu",
// "kannada", "malayalam", "tamil", "arabic", "latin".
std::vector<std::string> knownScripts();
// First `count` graphemes of a script. Throws ConfigError for an unknown
// script or a count beyond its table.
std::vector<std::string> scriptGraphemes(std::string_view script, int count);

struct LanguageConfig {
  std::string id;
  std::string displayName;
  std::string script;
  int graphemeCount = 12;
  std::string transliterationOf;
  int trainCount = 200;
  int validationCount = 40;
  int testCount = 40;
};

struct CorpusConfig {
  PhoneInventoryConfig phones;
  int lexiconSize = 30;
  int minWordLength = 2;
  int maxWordLength = 5;
  int minWords = 1;
  int maxWords = 4;
  // Fraction of words drawn from the borrowed-word lexicon; 0 disables it.
  double borrowedFraction = 0.0;
  std::string borrowedScript = "latin";
  std::string borrowedLanguageId = "en";
  std::vector<LanguageConfig> languages;

  // Throws ConfigError: no languages, split count < 1, duplicate ids, bad
  // ranges, unknown transliteration source or grapheme count mismatch with it.
  void validate() const;

  // Three languages over disjoint scripts.
  static CorpusConfig toy();
  // Toy setup where the second language re-renders the first one's lexicon
  // in another script.
  static CorpusConfig transliterationToy();
};

// Everything about a corpus except its utterances.
struct SyntheticWorld {
  PhoneInventory phones;
  std::vector<SyntheticLanguage> languages;  // config order
  std::optional<SyntheticLanguage> borrowed;

  const SyntheticLanguage& language(std::string_view id) const;
  // Config languages followed by the borrowed one, if enabled.
  LanguageRegistry registry() const;
};

SyntheticWorld buildWorld(const CorpusConfig& config, std::uint64_t seed);

// Word choice and durations come from `content`, Gaussian noise from `noise`.
// Utterances of a transliteration pair sharing `content` share phones.
struct UtteranceSeeds {
  std::uint64_t content = 0;
  std::uint64_t noise = 0;
};

struct BorrowedWords {
  const SyntheticLanguage* language = nullptr;
  double fraction = 0.0;
};

// Words separated by silence frames; every frame is rounded to float32 so
// the feature file round-trip is exact. Throws InvalidArgument for
// wordCount < 1 or an empty lexicon, GeneratorError for unmapped graphemes.
Utterance generateUtterance(const SyntheticLanguage& language, const PhoneInventory& phones,
                            int wordCount, const UtteranceSeeds& seeds,
                            BorrowedWords borrowed = {});
Utterance generateUtterance(const SyntheticLanguage& language, const PhoneInventory& phones,
                            int wordCount, std::uint64_t seed);

struct Corpus {
  std::vector<Utterance> utterances;

  std::size_t size() const { return utterances.size(); }
  bool empty() const { return utterances.empty(); }
  std::vector<const Utterance*> ofLanguage(std::string_view id) const;
  const Utterance* find(std::string_view id) const;
};

enum class Split { kTrain, kValidation, kTest };
std::string_view splitName(Split split);
Split parseSplit(std::string_view name);  // throws FormatError

struct CorpusSplits {
  LanguageRegistry registry;
  Corpus train;
  Corpus validation;
  Corpus test;
  std::uint64_t seed = 0;
  double framePeriodMs = 10.0;
  std::vector<double> silenceFrame;

  const Corpus& split(Split s) const;
  Corpus& split(Split s);
};

// Utterance `<lang>-<split>-<nnnnn>` draws its noise from
// hash(seed, id); its content comes from hash(seed, id of the same slot in
// the transliteration source), so a pair is parallel slot by slot.
CorpusSplits buildCorpus(const CorpusConfig& config, std::uint64_t seed);

std::string utteranceId(std::string_view language, Split split, int index);

}  // namespace mlas

#endif  // MLAS_CORPUS_SYNTHETIC_H_
