// mlas/model/checkpoint.cc
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

#include "mlas/model/checkpoint.h"

#include <bit>
#include <cstring>

#include <json.hpp>

#include "mlas/common/errors.h"
#include "mlas/common/fileio.h"

namespace mlas {

namespace {

using nlohmann::json;

constexpr std::string_view kMagic = "MLASCKPT";

template <typename T>
void putLe(std::string& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
}

template <typename T>
T getLe(std::string_view bytes, std::size_t offset) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    v |= static_cast<T>(static_cast<unsigned char>(bytes[offset + i])) << (8 * i);
  }
  return v;
}

}  // namespace

Checkpoint Checkpoint::of(const LasModel& model, const LanguageRegistry& languages,
                          std::int64_t step, std::uint64_t seed, int window, int stride) {
  Checkpoint c;
  c.config = model.config();
  c.languages = languages;
  c.vocabFingerprint = UnionVocab::build(languages).fingerprint();
  c.stackWindow = window;
  c.stackStride = stride;
  c.step = step;
  c.seed = seed;
  c.params = model.params();
  return c;
}

std::string Checkpoint::serialize() const {
  json header;
  header["model"] = config.toJson();
  header["languages"] = json::parse(languages.serialize());
  header["vocab_fingerprint"] = vocabFingerprint;
  header["stacking"] = {{"window", stackWindow}, {"stride", stackStride}};
  header["step"] = step;
  header["seed"] = seed;
  json table = json::array();
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Tensor& t = params.value(i);
    json shape = t.rank() == 1 ? json::array({t.rows()}) : json::array({t.rows(), t.cols()});
    table.push_back({{"name", params.name(i)}, {"shape", shape}});
  }
  header["parameters"] = std::move(table);
  const std::string headerText = header.dump();

  std::string out(kMagic);
  putLe<std::uint32_t>(out, kCheckpointVersion);
  putLe<std::uint64_t>(out, headerText.size());
  out += headerText;
  for (std::size_t i = 0; i < params.size(); ++i) {
    for (double v : params.value(i).values()) putLe(out, std::bit_cast<std::uint64_t>(v));
  }
  return out;
}

Checkpoint Checkpoint::parse(std::string_view bytes) {
  const std::size_t prefix = kMagic.size() + 4 + 8;
  if (bytes.size() < prefix || bytes.substr(0, kMagic.size()) != kMagic) {
    throw FormatError("not a checkpoint file");
  }
  const auto version = getLe<std::uint32_t>(bytes, kMagic.size());
  if (version != kCheckpointVersion) {
    throw FormatError("unsupported checkpoint version " + std::to_string(version));
  }
  const auto headerLength = getLe<std::uint64_t>(bytes, kMagic.size() + 4);
  if (headerLength > bytes.size() - prefix) throw FormatError("truncated checkpoint header");

  Checkpoint c;
  std::size_t offset = prefix + headerLength;
  try {
    const json header = json::parse(bytes.substr(prefix, headerLength));
    c.config = ModelConfig::fromJson(header.at("model"));
    c.languages = LanguageRegistry::parse(header.at("languages").dump());
    c.vocabFingerprint = header.at("vocab_fingerprint").get<std::string>();
    c.stackWindow = header.at("stacking").at("window").get<int>();
    c.stackStride = header.at("stacking").at("stride").get<int>();
    c.step = header.at("step").get<std::int64_t>();
    c.seed = header.at("seed").get<std::uint64_t>();
    for (const auto& entry : header.at("parameters")) {
      const auto shape = entry.at("shape").get<std::vector<std::size_t>>();
      if (shape.empty() || shape.size() > 2) throw FormatError("bad parameter rank");
      Tensor t = shape.size() == 1 ? Tensor::vector(shape[0])
                                   : Tensor::matrix(shape[0], shape[1]);
      if (bytes.size() - offset < 8 * t.size()) throw FormatError("truncated parameter data");
      for (double& v : t.values()) {
        v = std::bit_cast<double>(getLe<std::uint64_t>(bytes, offset));
        offset += 8;
      }
      c.params.add(entry.at("name").get<std::string>(), std::move(t));
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("checkpoint header: ") + e.what());
  } catch (const ConfigError& e) {
    throw FormatError(std::string("checkpoint model config: ") + e.what());
  }
  if (offset != bytes.size()) throw FormatError("trailing bytes after checkpoint payload");
  if (UnionVocab::build(c.languages).fingerprint() != c.vocabFingerprint) {
    throw FingerprintError("checkpoint vocabulary fingerprint does not match its languages");
  }
  return c;
}

void Checkpoint::save(const std::filesystem::path& path) const {
  writeFile(path, serialize());
}

Checkpoint Checkpoint::load(const std::filesystem::path& path) {
  try {
    return parse(readFile(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace mlas
