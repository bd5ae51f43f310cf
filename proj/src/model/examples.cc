// mlas/model/examples.cc
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

#include "mlas/model/examples.h"

#include "mlas/common/errors.h"

namespace mlas {

Example makeExampleAs(const Utterance& utterance, const UnionVocab& vocab, int language,
                      int window, int stride) {
  Example e;
  e.id = utterance.id;
  e.features = stackFrames(utterance.features, window, stride);
  e.tokens = vocab.encode(utterance.transcript);
  e.language = language;
  return e;
}

Example makeExample(const Utterance& utterance, const UnionVocab& vocab, int window,
                    int stride) {
  auto index = vocab.languageIndex(utterance.language);
  if (!index) {
    throw RegistryError("utterance '" + utterance.id + "' has unknown language '" +
                        utterance.language + "'");
  }
  return makeExampleAs(utterance, vocab, static_cast<int>(*index), window, stride);
}

std::vector<Example> makeExamples(const Corpus& corpus, const UnionVocab& vocab, int window,
                                  int stride) {
  std::vector<Example> out;
  out.reserve(corpus.size());
  for (const auto& u : corpus.utterances) out.push_back(makeExample(u, vocab, window, stride));
  return out;
}

}  // namespace mlas
