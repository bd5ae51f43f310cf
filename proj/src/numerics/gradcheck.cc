// mlas/numerics/gradcheck.cc
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

#include "mlas/numerics/gradcheck.h"

#include <algorithm>
#include <cmath>

#include "mlas/common/errors.h"

namespace mlas {

namespace {

double evaluate(const LossBuilder& build, const ParamSet& params) {
  Graph g;
  g.setGradEnabled(false);
  return build(g, params).scalar();
}

}  // namespace

double relativeError(double analytic, double numeric) {
  const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-8});
  return std::abs(analytic - numeric) / denom;
}

GradCheckReport gradCheck(const LossBuilder& build, ParamSet& params, double h) {
  if (!(h > 0.0)) throw InvalidArgument("finite-difference step must be positive");

  const double first = evaluate(build, params);
  const double second = evaluate(build, params);
  if (first != second) {
    throw NondeterminismError("loss builder returned " + std::to_string(first) +
                              " then " + std::to_string(second) +
                              " at the same parameters");
  }

  GradSet analytic(params);
  {
    Graph g;
    Value loss = build(g, params);
    g.backward(loss);
    g.accumulateParamGrads(analytic);
  }

  GradCheckReport report;
  for (std::size_t p = 0; p < params.size(); ++p) {
    Tensor& value = params.value(p);
    double diffSq = 0.0;
    double analyticSq = 0.0;
    double numericSq = 0.0;
    for (std::size_t k = 0; k < value.size(); ++k) {
      const double saved = value[k];
      value[k] = saved + h;
      const double up = evaluate(build, params);
      value[k] = saved - h;
      const double down = evaluate(build, params);
      value[k] = saved;
      const double numeric = (up - down) / (2.0 * h);
      const double a = analytic[p][k];
      diffSq += (a - numeric) * (a - numeric);
      analyticSq += a * a;
      numericSq += numeric * numeric;
    }
    const double worst = std::sqrt(diffSq) /
                         std::max({std::sqrt(analyticSq), std::sqrt(numericSq), 1e-8});
    report.perParameterErrors[params.name(p)] = worst;
    if (report.worstParameter.empty() || worst > report.maxRelativeError) {
      report.maxRelativeError = worst;
      report.worstParameter = params.name(p);
    }
  }
  return report;
}

}  // namespace mlas
