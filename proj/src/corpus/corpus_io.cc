// mlas/corpus/corpus_io.cc
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

#include "mlas/corpus/corpus_io.h"

#include <bit>
#include <charconv>
#include <cmath>

#include "mlas/common/errors.h"
#include "mlas/common/fileio.h"

namespace mlas {

namespace {

constexpr std::string_view kManifestMagic = "#mlas-manifest v1";
constexpr std::string_view kManifestColumns =
    "utterance_id\tlanguage\tsplit\ttranscript\tfeatures";

void putU32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t getU32(std::string_view bytes, std::size_t offset) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[offset + i])) << (8 * i);
  }
  return v;
}

std::vector<std::string_view> splitOn(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

void requireCellText(std::string_view cell, std::string_view what) {
  if (cell.find_first_of("\t\n\r") != std::string_view::npos) {
    throw InvalidArgument(std::string(what) + " contains a tab or newline");
  }
}

}  // namespace

std::string serializeFeatures(const FeatureSequence& features) {
  features.validate();
  const std::size_t t = features.length();
  const std::size_t f = features.dim();
  if (t > 0x7FFFFFFF || f > 0x7FFFFFFF) throw InvalidArgument("feature matrix too large");
  std::string out;
  out.reserve(8 + 4 * t * f);
  putU32(out, static_cast<std::uint32_t>(t));
  putU32(out, static_cast<std::uint32_t>(f));
  for (double v : features.frames.values()) {
    const float narrow = static_cast<float>(v);
    if (static_cast<double>(narrow) != v) {
      throw InvalidArgument("feature value is not representable as float32");
    }
    putU32(out, std::bit_cast<std::uint32_t>(narrow));
  }
  return out;
}

FeatureSequence parseFeatures(std::string_view bytes, double framePeriodMs) {
  if (bytes.size() < 8) throw FormatError("feature file shorter than its header");
  const auto t = static_cast<std::int32_t>(getU32(bytes, 0));
  const auto f = static_cast<std::int32_t>(getU32(bytes, 4));
  if (t < 1 || f < 1) throw FormatError("feature file has a nonpositive dimension");
  const std::size_t count = static_cast<std::size_t>(t) * static_cast<std::size_t>(f);
  if (bytes.size() != 8 + 4 * count) {
    throw FormatError("feature file size does not match its header");
  }
  FeatureSequence out;
  out.framePeriodMs = framePeriodMs;
  out.frames = Tensor::matrix(static_cast<std::size_t>(t), static_cast<std::size_t>(f));
  for (std::size_t i = 0; i < count; ++i) {
    out.frames[i] = std::bit_cast<float>(getU32(bytes, 8 + 4 * i));
  }
  if (!out.frames.allFinite()) throw FormatError("feature file has a non-finite value");
  return out;
}

void writeFeatureFile(const std::filesystem::path& path, const FeatureSequence& features) {
  writeFile(path, serializeFeatures(features));
}

FeatureSequence readFeatureFile(const std::filesystem::path& path, double framePeriodMs) {
  try {
    return parseFeatures(readFile(path), framePeriodMs);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string Manifest::serialize() const {
  std::string out(kManifestMagic);
  out += "\n#seed=" + std::to_string(seed) + " frame_period_ms=" + formatDouble(framePeriodMs) +
         " silence=";
  for (std::size_t i = 0; i < silenceFrame.size(); ++i) {
    out += (i ? "," : "") + formatDouble(silenceFrame[i]);
  }
  out += "\n";
  out += kManifestColumns;
  out += "\n";
  for (const auto& e : entries) {
    for (const auto* cell : {&e.utteranceId, &e.language, &e.split, &e.transcript,
                             &e.featurePath}) {
      requireCellText(*cell, "manifest cell");
    }
    out += e.utteranceId + "\t" + e.language + "\t" + e.split + "\t" + e.transcript + "\t" +
           e.featurePath + "\n";
  }
  return out;
}

Manifest Manifest::parse(std::string_view text) {
  if (text.empty() || text.back() != '\n') throw FormatError("manifest must end with a newline");
  auto lines = splitOn(text.substr(0, text.size() - 1), '\n');
  if (lines.size() < 3 || lines[0] != kManifestMagic) {
    throw FormatError("manifest header missing");
  }
  if (lines[2] != kManifestColumns) throw FormatError("manifest column header mismatch");

  Manifest m;
  std::string_view meta = lines[1];
  if (!meta.starts_with("#")) throw FormatError("manifest metadata line missing");
  auto fields = splitOn(meta.substr(1), ' ');
  if (fields.size() != 3 || !fields[0].starts_with("seed=") ||
      !fields[1].starts_with("frame_period_ms=") || !fields[2].starts_with("silence=")) {
    throw FormatError("malformed manifest metadata line");
  }
  std::string_view seedText = fields[0].substr(5);
  auto [end, ec] = std::from_chars(seedText.data(), seedText.data() + seedText.size(), m.seed);
  if (ec != std::errc() || end != seedText.data() + seedText.size()) {
    throw FormatError("malformed manifest seed");
  }
  m.framePeriodMs = parseDouble(fields[1].substr(16));
  std::string_view silence = fields[2].substr(8);
  if (!silence.empty()) {
    for (auto v : splitOn(silence, ',')) m.silenceFrame.push_back(parseDouble(v));
  }

  for (std::size_t i = 3; i < lines.size(); ++i) {
    auto cells = splitOn(lines[i], '\t');
    if (cells.size() != 5) {
      throw FormatError("manifest line " + std::to_string(i + 1) + ": expected 5 columns");
    }
    parseSplit(cells[2]);
    m.entries.push_back({std::string(cells[0]), std::string(cells[1]), std::string(cells[2]),
                         std::string(cells[3]), std::string(cells[4])});
  }
  return m;
}

Manifest manifestOf(const CorpusSplits& corpus) {
  Manifest m;
  m.seed = corpus.seed;
  m.framePeriodMs = corpus.framePeriodMs;
  m.silenceFrame = corpus.silenceFrame;
  for (Split s : {Split::kTrain, Split::kValidation, Split::kTest}) {
    for (const auto& u : corpus.split(s).utterances) {
      m.entries.push_back({u.id, u.language, std::string(splitName(s)), u.transcript,
                           std::string(kFeatureDir) + "/" + u.id + ".feat"});
    }
  }
  return m;
}

void saveCorpus(const std::filesystem::path& dir, const CorpusSplits& corpus) {
  std::error_code ec;
  std::filesystem::create_directories(dir / kFeatureDir, ec);
  if (ec) throw IoError("cannot create " + (dir / kFeatureDir).string() + ": " + ec.message());
  const Manifest manifest = manifestOf(corpus);
  const std::string manifestText = manifest.serialize();
  std::size_t n = 0;
  for (Split s : {Split::kTrain, Split::kValidation, Split::kTest}) {
    for (const auto& u : corpus.split(s).utterances) {
      writeFeatureFile(dir / manifest.entries[n++].featurePath, u.features);
    }
  }
  corpus.registry.save(dir / kRegistryFile);
  writeFile(dir / kManifestFile, manifestText);
}

CorpusSplits loadCorpus(const std::filesystem::path& dir) {
  CorpusSplits out;
  out.registry = LanguageRegistry::load(dir / kRegistryFile);
  const Manifest manifest = Manifest::parse(readFile(dir / kManifestFile));
  out.seed = manifest.seed;
  out.framePeriodMs = manifest.framePeriodMs;
  out.silenceFrame = manifest.silenceFrame;
  for (const auto& e : manifest.entries) {
    out.registry.indexOf(e.language);
    Utterance u;
    u.id = e.utteranceId;
    u.language = e.language;
    u.transcript = e.transcript;
    u.features = readFeatureFile(dir / e.featurePath, manifest.framePeriodMs);
    out.split(parseSplit(e.split)).utterances.push_back(std::move(u));
  }
  return out;
}

}  // namespace mlas
