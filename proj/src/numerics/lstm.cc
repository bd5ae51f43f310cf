// mlas/numerics/lstm.cc
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

#include "mlas/numerics/lstm.h"

#include "mlas/common/errors.h"
#include "mlas/numerics/ops.h"

namespace mlas {

LstmState zeroLstmState(Graph& g, std::size_t width) {
  return {g.constant(Tensor::vector(width)), g.constant(Tensor::vector(width))};
}

LstmState lstmStep(Value input, const LstmState& state, const LstmWeights& weights) {
  const Tensor& w = weights.weight.data();
  const std::size_t h = state.width();
  if (w.rank() != 2 || w.rows() != 4 * h || weights.bias.size() != 4 * h) {
    throw ShapeError("LSTM weights " + w.shapeString() + " do not match width " +
                     std::to_string(h));
  }
  if (w.cols() != input.size() + h) {
    throw ShapeError("LSTM input width " + std::to_string(input.size()) +
                     " does not match weights " + w.shapeString());
  }
  if (state.cell.size() != h) throw ShapeError("LSTM hidden/cell width mismatch");

  Value z = op::affine(weights.weight, op::concat({input, state.hidden}), weights.bias);
  Value i = op::sigmoid(op::slice(z, 0, h));
  Value f = op::sigmoid(op::slice(z, h, h));
  Value g = op::tanh(op::slice(z, 2 * h, h));
  Value o = op::sigmoid(op::slice(z, 3 * h, h));
  Value cell = op::add(op::mul(f, state.cell), op::mul(i, g));
  Value hidden = op::mul(o, op::tanh(cell));
  return {hidden, cell};
}

void addLstmParams(ParamSet& params, const std::string& prefix,
                   std::size_t inputWidth, std::size_t width, double scale,
                   std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(-scale, scale);
  Tensor w = Tensor::matrix(4 * width, inputWidth + width);
  for (double& v : w.values()) v = uniform(rng);
  Tensor b = Tensor::vector(4 * width);
  for (std::size_t k = 0; k < width; ++k) {
    b[static_cast<std::size_t>(LstmGate::kForget) * width + k] = kForgetGateBiasInit;
  }
  params.add(prefix + ".W", std::move(w));
  params.add(prefix + ".b", std::move(b));
}

}  // namespace mlas
