// mlas/numerics/lstm.h
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

#ifndef MLAS_NUMERICS_LSTM_H_
#define MLAS_NUMERICS_LSTM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "mlas/numerics/graph.h"

namespace mlas {

// Gate blocks inside the stacked weight, in row order.
enum class LstmGate { kInput = 0, kForget = 1, kCandidate = 2, kOutput = 3 };

inline constexpr double kForgetGateBiasInit = 1.0;

struct LstmState {
  Value hidden;
  Value cell;

  std::size_t width() const { return hidden.size(); }
};

// weight: [4H x (inputWidth + H)], bias: [4H]; rows are the gate blocks
// (input, forget, candidate, output), columns are [input ; previous hidden].
struct LstmWeights {
  Value weight;
  Value bias;
};

LstmState zeroLstmState(Graph& g, std::size_t width);

// Standard LSTM cell, no peepholes:
//   i = s(W_i z + b_i), f = s(W_f z + b_f), g = tanh(W_g z + b_g),
//   o = s(W_o z + b_o), c' = f*c + i*g, h' = o*tanh(c'), z = [x ; h].
// Throws ShapeError when the input width does not match the weights.
LstmState lstmStep(Value input, const LstmState& state, const LstmWeights& weights);

// Adds "<prefix>.W" and "<prefix>.b" to `params`. Weights are uniform on
// [-scale, scale]; biases are zero except the forget block.
void addLstmParams(ParamSet& params, const std::string& prefix,
                   std::size_t inputWidth, std::size_t width, double scale,
                   std::mt19937_64& rng);

}  // namespace mlas

#endif  // MLAS_NUMERICS_LSTM_H_
