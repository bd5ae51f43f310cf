// mlas/numerics/ops.h
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

#ifndef MLAS_NUMERICS_OPS_H_
#define MLAS_NUMERICS_OPS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "mlas/numerics/graph.h"

namespace mlas {

// Probabilities below this floor are clamped before taking the log.
inline constexpr double kProbabilityFloor = 1e-12;

// Max-subtracted softmax. Throws InvalidArgument on empty input and
// NonFiniteInput on NaN/Inf.
std::vector<double> softmax(std::span<const double> logits);

// -log(max(p[target], kProbabilityFloor)).
double crossEntropy(std::span<const double> probabilities, std::size_t target);

// Differentiable operations on graph values. All inputs must belong to the
// same graph. Shape mismatches throw ShapeError.
namespace op {

Value add(Value a, Value b);
Value sub(Value a, Value b);
Value mul(Value a, Value b);  // elementwise
Value scale(Value a, double factor);

Value sigmoid(Value x);
Value tanh(Value x);

Value sum(Value x);         // -> [1]
Value dot(Value a, Value b);  // -> [1]

// M[m x n] * x[n] -> [m]
Value matvec(Value m, Value x);
// M[m x n]^T * x[m] -> [n]
Value matvecT(Value m, Value x);
// W x + b
Value affine(Value w, Value x, Value b);
// A[m x k] * B[n x k]^T -> [m x n]
Value matmulNT(Value a, Value b);
// M[m x n] + 1 v^T, v[n]
Value addRowBroadcast(Value m, Value v);

Value concat(const std::vector<Value>& parts);
Value slice(Value x, std::size_t offset, std::size_t length);
Value stackRows(const std::vector<Value>& rows);
Value row(Value m, std::size_t r);  // embedding lookup
// Mean of the first `count` rows of M.
Value meanRows(Value m, std::size_t count);

Value softmax(Value logits);
Value crossEntropy(Value probabilities, std::size_t target);

}  // namespace op
}  // namespace mlas

#endif  // MLAS_NUMERICS_OPS_H_
