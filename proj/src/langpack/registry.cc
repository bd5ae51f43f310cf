// mlas/langpack/registry.cc
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

#include "mlas/langpack/registry.h"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mlas/common/errors.h"
#include "mlas/common/utf8.h"

namespace mlas {

namespace {

constexpr const char* kFormatName = "mlas-language-registry";
constexpr int kFormatVersion = 1;

using nlohmann::json;

void requireKeys(const json& obj, std::initializer_list<const char*> allowed,
                 const std::string& where) {
  if (!obj.is_object()) throw FormatError(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw FormatError(where + ": unknown key '" + key + "'");
  }
  for (const char* a : allowed) {
    if (!obj.contains(a)) throw FormatError(where + ": missing key '" + a + "'");
  }
}

}  // namespace

void LanguageSpec::validate() const {
  if (id.empty()) throw InvalidSpec("language id is empty");
  if (graphemes.empty()) throw InvalidSpec("language '" + id + "' has no graphemes");
  std::set<std::string> seen;
  for (const auto& g : graphemes) {
    std::vector<char32_t> cps;
    try {
      cps = utf8::decode(g);
    } catch (const InvalidArgument& e) {
      throw InvalidSpec("language '" + id + "': " + e.what());
    }
    if (cps.size() != 1) {
      throw InvalidSpec("language '" + id + "': grapheme '" + g +
                        "' is not a single codepoint");
    }
    if (cps[0] == U' ') throw InvalidSpec("language '" + id + "': space is reserved");
    if (cps[0] < 0x20 || cps[0] == 0x7F) {
      throw InvalidSpec("language '" + id + "': control character as grapheme");
    }
    if (!seen.insert(g).second) {
      throw InvalidSpec("language '" + id + "': duplicate grapheme '" + g + "'");
    }
  }
}

LanguageRegistry::LanguageRegistry(std::vector<LanguageSpec> languages) {
  for (auto& spec : languages) add(std::move(spec));
}

void LanguageRegistry::add(LanguageSpec spec) {
  spec.validate();
  if (find(spec.id)) throw RegistryError("duplicate language id '" + spec.id + "'");
  languages_.push_back(std::move(spec));
}

std::vector<std::string> LanguageRegistry::ids() const {
  std::vector<std::string> out;
  for (const auto& l : languages_) out.push_back(l.id);
  return out;
}

std::optional<std::size_t> LanguageRegistry::find(std::string_view id) const {
  for (std::size_t i = 0; i < languages_.size(); ++i) {
    if (languages_[i].id == id) return i;
  }
  return std::nullopt;
}

std::size_t LanguageRegistry::indexOf(std::string_view id) const {
  auto i = find(id);
  if (!i) throw RegistryError("unknown language '" + std::string(id) + "'");
  return *i;
}

const LanguageSpec& LanguageRegistry::get(std::string_view id) const {
  return languages_[indexOf(id)];
}

LanguageRegistry LanguageRegistry::subset(const std::vector<std::string>& ids) const {
  for (const auto& id : ids) indexOf(id);
  LanguageRegistry out;
  for (const auto& spec : languages_) {
    for (const auto& id : ids) {
      if (spec.id == id) {
        out.add(spec);
        break;
      }
    }
  }
  return out;
}

std::string LanguageRegistry::serialize() const {
  json doc;
  doc["format"] = kFormatName;
  doc["version"] = kFormatVersion;
  json langs = json::array();
  for (const auto& spec : languages_) {
    langs.push_back({{"id", spec.id},
                     {"display_name", spec.displayName},
                     {"graphemes", spec.graphemes}});
  }
  doc["languages"] = std::move(langs);
  return doc.dump(2) + "\n";
}

LanguageRegistry LanguageRegistry::parse(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("language registry: ") + e.what());
  }
  requireKeys(doc, {"format", "version", "languages"}, "language registry");
  if (doc["format"] != kFormatName) {
    throw FormatError("language registry: unexpected format tag");
  }
  if (doc["version"] != kFormatVersion) {
    throw FormatError("language registry: unsupported version " +
                      doc["version"].dump());
  }
  if (!doc["languages"].is_array()) {
    throw FormatError("language registry: 'languages' must be an array");
  }
  LanguageRegistry registry;
  std::size_t n = 0;
  for (const auto& entry : doc["languages"]) {
    const std::string where = "language registry: languages[" + std::to_string(n++) + "]";
    requireKeys(entry, {"id", "display_name", "graphemes"}, where);
    try {
      LanguageSpec spec;
      spec.id = entry["id"].get<std::string>();
      spec.displayName = entry["display_name"].get<std::string>();
      spec.graphemes = entry["graphemes"].get<std::vector<std::string>>();
      registry.add(std::move(spec));
    } catch (const json::exception& e) {
      throw FormatError(where + ": " + e.what());
    }
  }
  return registry;
}

void LanguageRegistry::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << serialize();
  if (!out) throw IoError("failed writing " + path.string());
}

LanguageRegistry LanguageRegistry::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace mlas
