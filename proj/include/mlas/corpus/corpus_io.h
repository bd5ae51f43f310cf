// mlas/corpus/corpus_io.h
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

// On-disk corpus layout:
//   <dir>/registry.json     language registry
//   <dir>/manifest.tsv      one row per utterance
//   <dir>/feats/<id>.feat   int32 T, int32 F (little-endian), T*F float32

#ifndef MLAS_CORPUS_CORPUS_IO_H_
#define MLAS_CORPUS_CORPUS_IO_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mlas/corpus/synthetic.h"

namespace mlas {

inline constexpr const char* kRegistryFile = "registry.json";
inline constexpr const char* kManifestFile = "manifest.tsv";
inline constexpr const char* kFeatureDir = "feats";

// Entries must be exactly representable as float32; anything else throws
// InvalidArgument rather than silently losing precision.
std::string serializeFeatures(const FeatureSequence& features);
// Throws FormatError for a truncated or inconsistent buffer.
FeatureSequence parseFeatures(std::string_view bytes, double framePeriodMs);

void writeFeatureFile(const std::filesystem::path& path, const FeatureSequence& features);
FeatureSequence readFeatureFile(const std::filesystem::path& path, double framePeriodMs);

struct ManifestEntry {
  std::string utteranceId;
  std::string language;
  std::string split;
  std::string transcript;
  std::string featurePath;  // relative to the corpus directory

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

// Tab-separated text with two comment lines carrying the corpus seed, frame
// period and silence frame.
struct Manifest {
  std::uint64_t seed = 0;
  double framePeriodMs = 10.0;
  std::vector<double> silenceFrame;
  std::vector<ManifestEntry> entries;

  std::string serialize() const;
  static Manifest parse(std::string_view text);  // throws FormatError

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

Manifest manifestOf(const CorpusSplits& corpus);

// Writes registry, manifest and feature files. The directory is created if
// needed. Throws IoError.
void saveCorpus(const std::filesystem::path& dir, const CorpusSplits& corpus);
// Throws IoError for missing files and FormatError for malformed ones.
CorpusSplits loadCorpus(const std::filesystem::path& dir);

}  // namespace mlas

#endif  // MLAS_CORPUS_CORPUS_IO_H_
