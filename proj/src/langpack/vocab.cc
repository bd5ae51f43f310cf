// mlas/langpack/vocab.cc
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

#include "mlas/langpack/vocab.h"

#include <algorithm>
#include <map>

#include "mlas/common/errors.h"
#include "mlas/common/hash.h"
#include "mlas/common/utf8.h"

namespace mlas {

UnionVocab UnionVocab::build(const std::vector<LanguageSpec>& specs) {
  if (specs.empty()) throw InvalidArgument("union vocabulary needs at least one language");
  // Goes through the registry for id-uniqueness and spec validation.
  LanguageRegistry registry(specs);

  std::map<char32_t, std::set<std::string>> graphemes;
  for (const auto& spec : registry.languages()) {
    for (const auto& g : spec.graphemes) graphemes[utf8::decode(g)[0]].insert(spec.id);
  }

  UnionVocab v;
  v.tokens_ = {"<pad>", "<sos>", "<eos>", " "};
  v.membership_.assign(kNumSpecials, {});
  for (auto& [cp, langs] : graphemes) {
    v.tokens_.push_back(utf8::encode(cp));
    v.membership_.push_back(std::move(langs));
  }
  for (std::size_t i = 0; i < v.tokens_.size(); ++i) {
    v.index_.emplace(v.tokens_[i], static_cast<int>(i));
  }
  for (const auto& spec : registry.languages()) {
    v.languageIds_.push_back(spec.id);
    std::vector<bool> owned(v.tokens_.size(), false);
    for (const auto& g : spec.graphemes) owned[v.index_.at(g)] = true;
    v.languageTokens_.push_back(std::move(owned));
  }
  return v;
}

std::optional<int> UnionVocab::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> UnionVocab::languageIndex(std::string_view id) const {
  for (std::size_t i = 0; i < languageIds_.size(); ++i) {
    if (languageIds_[i] == id) return i;
  }
  return std::nullopt;
}

bool UnionVocab::languageHasToken(std::size_t language, int index) const {
  return index >= 0 && static_cast<std::size_t>(index) < tokens_.size() &&
         languageTokens_.at(language)[index];
}

std::vector<int> UnionVocab::encode(std::string_view text) const {
  std::vector<int> out;
  const auto cps = utf8::decode(text);
  out.reserve(cps.size());
  for (std::size_t pos = 0; pos < cps.size(); ++pos) {
    if (cps[pos] == U' ') {
      out.push_back(kSpace);
      continue;
    }
    auto it = index_.find(utf8::encode(cps[pos]));
    if (it == index_.end() || isSpecial(it->second)) throw OovError(cps[pos], pos);
    out.push_back(it->second);
  }
  return out;
}

std::string UnionVocab::decode(std::span<const int> indices) const {
  std::string out;
  for (int i : indices) {
    if (i < 0 || static_cast<std::size_t>(i) >= tokens_.size()) {
      throw InvalidArgument("token index " + std::to_string(i) + " out of range");
    }
    out += tokens_[i];
  }
  return out;
}

std::string UnionVocab::fingerprint() const {
  std::uint64_t h = fnv1a64("mlas-vocab-v1");
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    h = fnv1a64(tokens_[i], h);
    h = fnv1a64(std::string_view("\x1f", 1), h);
    for (const auto& lang : membership_[i]) {
      h = fnv1a64(lang, h);
      h = fnv1a64(std::string_view("\x1e", 1), h);
    }
    h = fnv1a64(std::string_view("\x1d", 1), h);
  }
  return toHex(h);
}

std::string ScriptLabel::str() const {
  switch (kind_) {
    case Kind::kLanguage:
      return language_;
    case Kind::kMixed:
      return std::string(kMixedLabel);
    case Kind::kOutOfVocabulary:
      return std::string(kOovLabel);
  }
  return {};
}

ScriptLabel classifyWord(std::string_view word, const UnionVocab& vocab,
                         std::string_view truthLanguage) {
  auto truth = vocab.languageIndex(truthLanguage);
  if (!truth) {
    throw RegistryError("unknown truth language '" + std::string(truthLanguage) + "'");
  }
  const auto cps = utf8::decode(word);
  if (cps.empty()) throw InvalidArgument("cannot classify an empty word");

  std::vector<int> tokens;
  tokens.reserve(cps.size());
  for (char32_t cp : cps) {
    auto idx = vocab.find(utf8::encode(cp));
    if (!idx || UnionVocab::isSpecial(*idx)) return ScriptLabel::outOfVocabulary();
    tokens.push_back(*idx);
  }

  auto covers = [&](std::size_t lang) {
    return std::all_of(tokens.begin(), tokens.end(),
                       [&](int t) { return vocab.languageHasToken(lang, t); });
  };
  if (covers(*truth)) return ScriptLabel::language(std::string(truthLanguage));
  for (std::size_t l = 0; l < vocab.languageIds().size(); ++l) {
    if (l != *truth && covers(l)) return ScriptLabel::language(vocab.languageIds()[l]);
  }
  return ScriptLabel::mixed();
}

}  // namespace mlas
