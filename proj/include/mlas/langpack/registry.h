// mlas/langpack/registry.h
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

#ifndef MLAS_LANGPACK_REGISTRY_H_
#define MLAS_LANGPACK_REGISTRY_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mlas {

// One language's grapheme inventory. A grapheme is a single codepoint.
struct LanguageSpec {
  std::string id;
  std::string displayName;
  std::vector<std::string> graphemes;

  // Throws InvalidSpec: empty id, empty or duplicated graphemes, multi-
  // codepoint graphemes, or the space character.
  void validate() const;

  friend bool operator==(const LanguageSpec&, const LanguageSpec&) = default;
};

// Ordered collection of languages. Registry order is significant: it fixes
// language indices inside models and tie-breaking in word classification.
class LanguageRegistry {
 public:
  LanguageRegistry() = default;
  explicit LanguageRegistry(std::vector<LanguageSpec> languages);

  // Throws RegistryError for a duplicate id, InvalidSpec for a bad spec.
  void add(LanguageSpec spec);

  std::size_t size() const { return languages_.size(); }
  bool empty() const { return languages_.empty(); }
  const LanguageSpec& at(std::size_t i) const { return languages_[i]; }
  const std::vector<LanguageSpec>& languages() const { return languages_; }
  std::vector<std::string> ids() const;

  std::optional<std::size_t> find(std::string_view id) const;
  std::size_t indexOf(std::string_view id) const;  // throws RegistryError
  const LanguageSpec& get(std::string_view id) const;

  // Languages in `ids`, kept in this registry's order.
  LanguageRegistry subset(const std::vector<std::string>& ids) const;

  // Registry file (JSON, see docs/formats.md). parse() throws FormatError on
  // malformed documents and RegistryError/InvalidSpec on invalid content.
  std::string serialize() const;
  static LanguageRegistry parse(std::string_view text);
  void save(const std::filesystem::path& path) const;
  static LanguageRegistry load(const std::filesystem::path& path);

  friend bool operator==(const LanguageRegistry&, const LanguageRegistry&) = default;

 private:
  std::vector<LanguageSpec> languages_;
};

}  // namespace mlas

#endif  // MLAS_LANGPACK_REGISTRY_H_
