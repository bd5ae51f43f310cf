// mlas/tests/unit/numerics_test.cc
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

#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "mlas/common/errors.h"
#include "mlas/numerics/gradcheck.h"
#include "mlas/numerics/graph.h"
#include "mlas/numerics/lstm.h"
#include "mlas/numerics/ops.h"

namespace mlas {
namespace {

Tensor randomVector(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Tensor t = Tensor::vector(n);
  for (double& v : t.values()) v = u(rng);
  return t;
}

Tensor randomMatrix(std::size_t r, std::size_t c, std::mt19937_64& rng,
                    double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Tensor t = Tensor::matrix(r, c);
  for (double& v : t.values()) v = u(rng);
  return t;
}

// ------------------------------------------------------------------ softmax

TEST(SoftmaxTest, UniformForEqualLogits) {
  auto p = softmax(std::vector<double>{0.0, 0.0, 0.0});
  for (double v : p) EXPECT_NEAR(v, 1.0 / 3.0, 1e-15);
}

TEST(SoftmaxTest, LargeLogitDoesNotOverflow) {
  auto p = softmax(std::vector<double>{1000.0, 0.0});
  EXPECT_TRUE(std::isfinite(p[0]) && std::isfinite(p[1]));
  EXPECT_NEAR(p[0], 1.0, 1e-15);
  EXPECT_NEAR(p[1], 0.0, 1e-15);
}

TEST(SoftmaxTest, HandEvaluatedValues) {
  auto p = softmax(std::vector<double>{1.0, 2.0, 3.0});
  EXPECT_NEAR(p[0], 0.09003057, 1e-8);
  EXPECT_NEAR(p[1], 0.24472847, 1e-8);
  EXPECT_NEAR(p[2], 0.66524096, 1e-8);
}

TEST(SoftmaxTest, Errors) {
  EXPECT_THROW(softmax(std::vector<double>{}), InvalidArgument);
  EXPECT_THROW(softmax(std::vector<double>{1.0, std::nan("")}), NonFiniteInput);
  EXPECT_THROW(softmax(std::vector<double>{std::numeric_limits<double>::infinity()}),
               NonFiniteInput);
}

TEST(SoftmaxTest, ValidDistributionAndShiftInvariance) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mag(-6.0, 6.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 17;
    std::vector<double> x(n);
    const double scale = std::pow(10.0, mag(rng));
    for (double& v : x) v = std::uniform_real_distribution<double>(-1, 1)(rng) * scale;
    auto p = softmax(x);
    double s = 0.0;
    for (double v : p) {
      EXPECT_GE(v, 0.0);
      s += v;
    }
    EXPECT_NEAR(s, 1.0, 1e-9);
    EXPECT_EQ(std::max_element(p.begin(), p.end()) - p.begin(),
              std::max_element(x.begin(), x.end()) - x.begin());

    if (scale < 1e3) {
      const double c = std::uniform_real_distribution<double>(-50, 50)(rng);
      std::vector<double> shifted = x;
      for (double& v : shifted) v += c;
      auto q = softmax(shifted);
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(p[i], q[i], 1e-12);
    }
  }
}

// ------------------------------------------------------------ cross entropy

TEST(CrossEntropyTest, Values) {
  EXPECT_DOUBLE_EQ(crossEntropy(std::vector<double>{1.0, 0.0, 0.0}, 0), 0.0);
  EXPECT_NEAR(crossEntropy(std::vector<double>{0.5, 0.5}, 1), std::log(2.0), 1e-15);
  EXPECT_NEAR(crossEntropy(std::vector<double>{0.1, 0.2, 0.7}, 2), 0.356675, 1e-6);
}

TEST(CrossEntropyTest, FloorKeepsLossFinite) {
  const double loss = crossEntropy(std::vector<double>{1.0, 0.0}, 1);
  EXPECT_NEAR(loss, -std::log(kProbabilityFloor), 1e-12);
}

TEST(CrossEntropyTest, TargetOutOfRange) {
  EXPECT_THROW(crossEntropy(std::vector<double>{0.5, 0.5}, 2), InvalidArgument);
}

// ----------------------------------------------------------------- backward

TEST(BackwardTest, SumGivesOnes) {
  Graph g;
  Value w = g.variable(Tensor::fromVector({0.3, -1.0, 2.5, 4.0}));
  Value loss = op::sum(w);
  g.backward(loss);
  for (double v : w.grad().values()) EXPECT_EQ(v, 1.0);
}

TEST(BackwardTest, DotWithSelfGivesTwiceW) {
  Graph g;
  Value w = g.variable(Tensor::fromVector({0.3, -1.0, 2.5}));
  g.backward(op::dot(w, w));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(w.grad()[i], 2.0 * w.data()[i]);
}

TEST(BackwardTest, ValueUsedTwiceSumsContributions) {
  // loss = sum(tanh(x) * x) + sum(3 x); d/dx = tanh(x) + x (1 - tanh^2 x) + 3
  Graph g;
  Tensor xt = Tensor::fromVector({0.2, -0.7, 1.3});
  Value x = g.variable(xt);
  Value loss = op::add(op::sum(op::mul(op::tanh(x), x)), op::sum(op::scale(x, 3.0)));
  g.backward(loss);
  for (std::size_t i = 0; i < 3; ++i) {
    const double t = std::tanh(xt[i]);
    EXPECT_NEAR(x.grad()[i], t + xt[i] * (1 - t * t) + 3.0, 1e-14);
  }
}

TEST(BackwardTest, RepeatedCallsAccumulateLeafGradients) {
  Graph g;
  Value w = g.variable(Tensor::fromVector({1.0, 2.0}));
  Value loss = op::dot(w, w);
  g.backward(loss);
  g.backward(loss);
  EXPECT_DOUBLE_EQ(w.grad()[0], 4.0);
  EXPECT_DOUBLE_EQ(w.grad()[1], 8.0);
  g.zeroLeafGrads();
  g.backward(loss);
  EXPECT_DOUBLE_EQ(w.grad()[1], 4.0);
}

TEST(BackwardTest, NonScalarLossRejected) {
  Graph g;
  Value w = g.variable(Tensor::fromVector({1.0, 2.0}));
  EXPECT_THROW(g.backward(op::tanh(w)), InvalidArgument);
}

TEST(BackwardTest, GradIsZeroBeforeBackward) {
  Graph g;
  Value w = g.variable(Tensor::fromVector({1.0, 2.0}));
  Value y = op::tanh(w);
  for (double v : y.grad().values()) EXPECT_EQ(v, 0.0);
  for (double v : w.grad().values()) EXPECT_EQ(v, 0.0);
  EXPECT_NE(w.id(), y.id());
}

TEST(BackwardTest, ParameterLeavesAreSharedAndAccumulated) {
  ParamSet params;
  params.add("w", Tensor::fromVector({1.0, -2.0}));
  Graph g;
  Value a = g.param(params, "w");
  Value b = g.param(params, std::size_t{0});
  EXPECT_EQ(a.id(), b.id());
  g.backward(op::add(op::sum(a), op::dot(b, b)));
  GradSet grads(params);
  g.accumulateParamGrads(grads);
  EXPECT_DOUBLE_EQ(grads[0][0], 1.0 + 2.0);
  EXPECT_DOUBLE_EQ(grads[0][1], 1.0 - 4.0);
}

TEST(ShapeTest, MismatchesThrow) {
  Graph g;
  Value a = g.variable(Tensor::vector(3));
  Value b = g.variable(Tensor::vector(4));
  Value m = g.variable(Tensor::matrix(2, 3));
  EXPECT_THROW(op::add(a, b), ShapeError);
  EXPECT_THROW(op::matvec(m, b), ShapeError);
  EXPECT_THROW(op::slice(a, 2, 2), ShapeError);
  EXPECT_THROW(op::row(m, 2), ShapeError);
  EXPECT_NO_THROW(op::matvec(m, a));
}

// --------------------------------------------------------------------- LSTM

double sigmoidScalar(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Element-by-element evaluation of one LSTM step, independent of the graph ops.
void scalarLstmOracle(const Tensor& w, const Tensor& b, const std::vector<double>& x,
                      const std::vector<double>& hPrev, const std::vector<double>& cPrev,
                      std::vector<double>& hOut, std::vector<double>& cOut) {
  const std::size_t h = hPrev.size();
  const std::size_t in = x.size();
  auto gate = [&](std::size_t block, std::size_t k) {
    const std::size_t r = block * h + k;
    double acc = b[r];
    for (std::size_t j = 0; j < in; ++j) acc += w.at(r, j) * x[j];
    for (std::size_t j = 0; j < h; ++j) acc += w.at(r, in + j) * hPrev[j];
    return acc;
  };
  hOut.assign(h, 0.0);
  cOut.assign(h, 0.0);
  for (std::size_t k = 0; k < h; ++k) {
    const double ig = sigmoidScalar(gate(0, k));
    const double fg = sigmoidScalar(gate(1, k));
    const double gg = std::tanh(gate(2, k));
    const double og = sigmoidScalar(gate(3, k));
    cOut[k] = fg * cPrev[k] + ig * gg;
    hOut[k] = og * std::tanh(cOut[k]);
  }
}

TEST(LstmTest, ZeroParamsGiveZeroHidden) {
  Graph g;
  LstmWeights w{g.constant(Tensor::matrix(8, 5)), g.constant(Tensor::vector(8))};
  LstmState s = zeroLstmState(g, 2);
  LstmState out = lstmStep(g.constant(Tensor::fromVector({3.0, -1.0, 7.0})), s, w);
  for (double v : out.hidden.data().values()) EXPECT_EQ(v, 0.0);
}

TEST(LstmTest, PureFunction) {
  std::mt19937_64 rng(3);
  Graph g;
  LstmWeights w{g.constant(randomMatrix(12, 5, rng)), g.constant(randomVector(12, rng))};
  LstmState s{g.constant(randomVector(3, rng)), g.constant(randomVector(3, rng))};
  Value x = g.constant(randomVector(2, rng));
  LstmState a = lstmStep(x, s, w);
  LstmState b = lstmStep(x, s, w);
  EXPECT_EQ(a.hidden.data(), b.hidden.data());
  EXPECT_EQ(a.cell.data(), b.cell.data());
}

TEST(LstmTest, MatchesScalarOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Tensor wt = randomMatrix(12, 4 + 3, rng);
    Tensor bt = randomVector(12, rng);
    Tensor xt = randomVector(4, rng, 2.0);
    Tensor ht = randomVector(3, rng);
    Tensor ct = randomVector(3, rng, 2.0);
    Graph g;
    LstmWeights w{g.constant(wt), g.constant(bt)};
    LstmState out = lstmStep(g.constant(xt), {g.constant(ht), g.constant(ct)}, w);
    std::vector<double> hOracle, cOracle;
    scalarLstmOracle(wt, bt, {xt.values().begin(), xt.values().end()},
                     {ht.values().begin(), ht.values().end()},
                     {ct.values().begin(), ct.values().end()}, hOracle, cOracle);
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_NEAR(out.hidden.data()[k], hOracle[k], 1e-12);
      EXPECT_NEAR(out.cell.data()[k], cOracle[k], 1e-12);
      EXPECT_GT(out.hidden.data()[k], -1.0);
      EXPECT_LT(out.hidden.data()[k], 1.0);
    }
  }
}

TEST(LstmTest, HiddenStaysInOpenUnitIntervalForLargeInputs) {
  std::mt19937_64 rng(5);
  Graph g;
  LstmWeights w{g.constant(randomMatrix(16, 10, rng, 3.0)),
                g.constant(randomVector(16, rng, 3.0))};
  LstmState s = zeroLstmState(g, 4);
  for (int t = 0; t < 50; ++t) {
    s = lstmStep(g.constant(randomVector(6, rng, 10.0)), s, w);
    for (double v : s.hidden.data().values()) {
      EXPECT_TRUE(std::isfinite(v));
      EXPECT_GT(v, -1.0);
      EXPECT_LT(v, 1.0);
    }
  }
}

TEST(LstmTest, WidthMismatchThrows) {
  Graph g;
  LstmWeights w{g.constant(Tensor::matrix(8, 5)), g.constant(Tensor::vector(8))};
  LstmState s = zeroLstmState(g, 2);
  EXPECT_THROW(lstmStep(g.constant(Tensor::vector(4)), s, w), ShapeError);
}

TEST(LstmTest, ForgetBiasInitialisedToOne) {
  ParamSet params;
  std::mt19937_64 rng(1);
  addLstmParams(params, "cell", 3, 2, 0.05, rng);
  const Tensor& b = params["cell.b"];
  EXPECT_EQ(b.size(), 8u);
  for (std::size_t k = 0; k < 8; ++k) EXPECT_EQ(b[k], (k >= 2 && k < 4) ? 1.0 : 0.0);
  for (double v : params["cell.W"].values()) EXPECT_LE(std::abs(v), 0.05);
}

// --------------------------------------------------------------- gradcheck

TEST(GradCheckTest, QuadraticIsExactUpToRoundoff) {
  ParamSet params;
  params.add("w", Tensor::fromVector({0.5, -1.5, 2.0, 0.25}));
  auto build = [](Graph& g, const ParamSet& p) {
    Value w = g.param(p, "w");
    return op::add(op::dot(w, w), op::sum(op::scale(w, 0.5)));
  };
  auto report = gradCheck(build, params, 1e-5);
  EXPECT_LT(report.maxRelativeError, 1e-7);
  EXPECT_EQ(report.perParameterErrors.size(), 1u);
}

TEST(GradCheckTest, SoftmaxCrossEntropyHead) {
  std::mt19937_64 rng(21);
  ParamSet params;
  params.add("W", randomMatrix(5, 4, rng));
  params.add("b", randomVector(5, rng));
  const Tensor x = randomVector(4, rng);
  auto build = [&](Graph& g, const ParamSet& p) {
    Value logits = op::affine(g.param(p, "W"), g.constant(x), g.param(p, "b"));
    return op::crossEntropy(op::softmax(logits), 3);
  };
  auto report = gradCheck(build, params, 1e-5);
  EXPECT_LT(report.maxRelativeError, 1e-6) << report.worstParameter;
}

TEST(GradCheckTest, AdditiveAttentionChain) {
  std::mt19937_64 rng(33);
  ParamSet params;
  params.add("H", randomMatrix(4, 6, rng));
  params.add("W_h", randomMatrix(3, 6, rng));
  params.add("W_d", randomMatrix(3, 5, rng));
  params.add("v", randomVector(3, rng));
  params.add("b_a", randomVector(3, rng));
  params.add("d", randomVector(5, rng));
  params.add("probe", randomVector(6, rng));
  auto build = [](Graph& g, const ParamSet& p) {
    Value h = g.param(p, "H");
    Value keys = op::matmulNT(h, g.param(p, "W_h"));
    Value query = op::affine(g.param(p, "W_d"), g.param(p, "d"), g.param(p, "b_a"));
    Value scores = op::matvec(op::tanh(op::addRowBroadcast(keys, query)), g.param(p, "v"));
    Value alpha = op::softmax(scores);
    Value context = op::matvecT(h, alpha);
    return op::dot(context, g.param(p, "probe"));
  };
  auto report = gradCheck(build, params, 1e-5);
  EXPECT_LT(report.maxRelativeError, 1e-4) << report.worstParameter;
}

TEST(GradCheckTest, RandomCompositesMatchFiniteDifferences) {
  for (int seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(100 + seed);
    ParamSet params;
    addLstmParams(params, "cell", 3, 2, 0.5, rng);
    params.add("E", randomMatrix(4, 3, rng));
    params.add("M", randomMatrix(3, 2, rng));
    auto build = [](Graph& g, const ParamSet& p) {
      LstmWeights w{g.param(p, "cell.W"), g.param(p, "cell.b")};
      LstmState s = zeroLstmState(g, 2);
      std::vector<Value> hs;
      for (std::size_t t = 0; t < 3; ++t) {
        s = lstmStep(op::row(g.param(p, "E"), t), s, w);
        hs.push_back(s.hidden);
      }
      Value stacked = op::stackRows(hs);
      Value mean = op::meanRows(stacked, 2);
      Value proj = op::matvec(g.param(p, "M"), mean);
      Value probs = op::softmax(op::concat({proj, op::slice(s.cell, 0, 1)}));
      return op::add(op::crossEntropy(probs, 1), op::sum(op::sub(op::slice(proj, 0, 2), mean)));
    };
    auto report = gradCheck(build, params, 1e-5);
    EXPECT_LT(report.maxRelativeError, 1e-4)
        << "seed " << seed << " worst " << report.worstParameter;
  }
}

TEST(GradCheckTest, DetectsNondeterministicBuilder) {
  ParamSet params;
  params.add("w", Tensor::fromVector({1.0}));
  int calls = 0;
  auto build = [&calls](Graph& g, const ParamSet& p) {
    ++calls;
    return op::scale(op::sum(g.param(p, "w")), static_cast<double>(calls));
  };
  EXPECT_THROW(gradCheck(build, params, 1e-5), NondeterminismError);
}

TEST(GradCheckTest, RejectsNonPositiveStep) {
  ParamSet params;
  params.add("w", Tensor::fromVector({1.0}));
  auto build = [](Graph& g, const ParamSet& p) { return op::sum(g.param(p, "w")); };
  EXPECT_THROW(gradCheck(build, params, 0.0), InvalidArgument);
}

TEST(GradCheckTest, ReportMaxMatchesPerParameterMaximum) {
  std::mt19937_64 rng(8);
  ParamSet params;
  params.add("a", randomVector(3, rng));
  params.add("b", randomVector(3, rng));
  auto build = [](Graph& g, const ParamSet& p) {
    return op::dot(op::tanh(g.param(p, "a")), op::sigmoid(g.param(p, "b")));
  };
  auto report = gradCheck(build, params, 1e-5);
  double worst = 0.0;
  for (const auto& [name, err] : report.perParameterErrors) worst = std::max(worst, err);
  EXPECT_EQ(worst, report.maxRelativeError);
}

}  // namespace
}  // namespace mlas
