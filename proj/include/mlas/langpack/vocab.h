// mlas/langpack/vocab.h
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

#ifndef MLAS_LANGPACK_VOCAB_H_
#define MLAS_LANGPACK_VOCAB_H_

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mlas/langpack/registry.h"

namespace mlas {

// Output vocabulary over the union of several languages' graphemes:
//   [<pad>, <sos>, <eos>, " ", sorted union of graphemes...]
// Graphemes are sorted by codepoint so that the token order does not
// depend on the order in which languages were listed.
class UnionVocab {
 public:
  static constexpr int kPad = 0;
  static constexpr int kSos = 1;
  static constexpr int kEos = 2;
  static constexpr int kSpace = 3;
  static constexpr int kNumSpecials = 4;

  UnionVocab() = default;

  // Throws InvalidArgument for no specs, RegistryError for duplicate ids and
  // InvalidSpec for an invalid spec.
  static UnionVocab build(const std::vector<LanguageSpec>& specs);
  static UnionVocab build(const LanguageRegistry& registry) {
    return build(registry.languages());
  }

  std::size_t size() const { return tokens_.size(); }
  const std::string& token(int index) const { return tokens_.at(index); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::optional<int> find(std::string_view token) const;
  static bool isSpecial(int index) { return index >= 0 && index < kNumSpecials; }

  // Language ids (in the order given to build()) owning this token.
  // Empty for the special tokens.
  const std::set<std::string>& membership(int index) const {
    return membership_.at(index);
  }

  // Languages in build() order.
  const std::vector<std::string>& languageIds() const { return languageIds_; }
  std::optional<std::size_t> languageIndex(std::string_view id) const;
  bool languageHasToken(std::size_t language, int index) const;

  // Maps each codepoint of `text` to a token; ' ' maps to kSpace. Throws
  // OovError naming the first unknown codepoint and its position.
  std::vector<int> encode(std::string_view text) const;
  // Inverse of encode(). Special tokens other than space render as their
  // names. Throws InvalidArgument for an out-of-range index.
  std::string decode(std::span<const int> indices) const;

  // Stable 64-bit digest (hex) of the token list and membership.
  std::string fingerprint() const;

 private:
  std::vector<std::string> tokens_;
  std::vector<std::set<std::string>> membership_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::string> languageIds_;
  // languageTokens_[l][token] is true when language l owns the token.
  std::vector<std::vector<bool>> languageTokens_;
};

// Outcome of classifying one word by script.
class ScriptLabel {
 public:
  enum class Kind { kLanguage, kMixed, kOutOfVocabulary };

  static ScriptLabel language(std::string id) {
    return ScriptLabel(Kind::kLanguage, std::move(id));
  }
  static ScriptLabel mixed() { return ScriptLabel(Kind::kMixed, {}); }
  static ScriptLabel outOfVocabulary() {
    return ScriptLabel(Kind::kOutOfVocabulary, {});
  }

  Kind kind() const { return kind_; }
  // Empty unless kind() == kLanguage.
  const std::string& languageId() const { return language_; }
  // Language id, "mixed" or "out-of-vocabulary".
  std::string str() const;

  friend bool operator==(const ScriptLabel&, const ScriptLabel&) = default;

 private:
  ScriptLabel(Kind kind, std::string language)
      : kind_(kind), language_(std::move(language)) {}

  Kind kind_;
  std::string language_;
};

inline constexpr std::string_view kMixedLabel = "mixed";
inline constexpr std::string_view kOovLabel = "out-of-vocabulary";

// Tests the word against the truth language's charset first, then every
// other language in registry order. Words no single charset covers are
// `mixed`; a grapheme outside every charset makes the word
// `out-of-vocabulary`. Throws RegistryError for an unknown truth language
// and InvalidArgument for an empty word.
ScriptLabel classifyWord(std::string_view word, const UnionVocab& vocab,
                         std::string_view truthLanguage);

}  // namespace mlas

#endif  // MLAS_LANGPACK_VOCAB_H_
