// mlas/numerics/gradcheck.h
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

#ifndef MLAS_NUMERICS_GRADCHECK_H_
#define MLAS_NUMERICS_GRADCHECK_H_

#include <functional>
#include <map>
#include <string>

#include "mlas/numerics/graph.h"

namespace mlas {

struct GradCheckReport {
  double maxRelativeError = 0.0;
  std::string worstParameter;
  std::map<std::string, double> perParameterErrors;
};

// Builds a scalar loss inside the given graph from the given parameters.
using LossBuilder = std::function<Value(Graph&, const ParamSet&)>;

// |a - n| / max(|a|, |n|, 1e-8)
double relativeError(double analytic, double numeric);

// Compares backward() against central differences with step h on every
// scalar of every parameter. A parameter's error is relativeError() taken
// over its whole gradient, with |.| the Euclidean norm; elementwise ratios
// of near-zero components only measure roundoff. `params` is perturbed in
// place and restored.
// Throws InvalidArgument for h <= 0 and NondeterminismError when two
// evaluations at the same point disagree.
GradCheckReport gradCheck(const LossBuilder& build, ParamSet& params,
                          double h = 1e-5);

}  // namespace mlas

#endif  // MLAS_NUMERICS_GRADCHECK_H_
