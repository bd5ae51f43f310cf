// mlas/model/examples.h
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

#ifndef MLAS_MODEL_EXAMPLES_H_
#define MLAS_MODEL_EXAMPLES_H_

#include <vector>

#include "mlas/corpus/synthetic.h"
#include "mlas/langpack/vocab.h"
#include "mlas/model/las.h"

namespace mlas {

// Stacks the utterance's frames and encodes its transcript. `language`
// indexes the model's language list; pass it explicitly for utterances whose
// label is not a registry id (code-switched probes). Throws OovError for a
// transcript outside the vocabulary.
Example makeExampleAs(const Utterance& utterance, const UnionVocab& vocab, int language,
                      int window = kDefaultStackWindow, int stride = kDefaultStackStride);
// Looks the language up in the vocabulary's language list; RegistryError if
// absent.
Example makeExample(const Utterance& utterance, const UnionVocab& vocab,
                    int window = kDefaultStackWindow, int stride = kDefaultStackStride);
std::vector<Example> makeExamples(const Corpus& corpus, const UnionVocab& vocab,
                                  int window = kDefaultStackWindow,
                                  int stride = kDefaultStackStride);

}  // namespace mlas

#endif  // MLAS_MODEL_EXAMPLES_H_
