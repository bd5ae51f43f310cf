// mlas/numerics/ops.cc
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

#include "mlas/numerics/ops.h"

#include <algorithm>
#include <cmath>

#include "mlas/common/errors.h"

namespace mlas {

namespace {

Graph& graphOf(Value a) {
  if (!a.valid()) throw InvalidArgument("operation on an empty Value");
  return *a.graph();
}

Graph& graphOf(Value a, Value b) {
  Graph& g = graphOf(a);
  if (b.graph() != &g) throw InvalidArgument("operands belong to different graphs");
  return g;
}

void requireSameShape(const Tensor& a, const Tensor& b, const char* what) {
  if (!a.sameShape(b)) {
    throw ShapeError(std::string(what) + ": shape " + a.shapeString() +
                     " vs " + b.shapeString());
  }
}

void requireVector(const Tensor& t, const char* what) {
  if (t.rank() != 1) {
    throw ShapeError(std::string(what) + ": expected a vector, got " +
                     t.shapeString());
  }
}

void requireMatrix(const Tensor& t, const char* what) {
  if (t.rank() != 2) {
    throw ShapeError(std::string(what) + ": expected a matrix, got " +
                     t.shapeString());
  }
}

void softmaxInto(std::span<const double> x, std::span<double> out) {
  const double m = *std::max_element(x.begin(), x.end());
  double z = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::exp(x[i] - m);
    z += out[i];
  }
  const double inv = 1.0 / z;
  for (double& v : out) v *= inv;
}

}  // namespace

std::vector<double> softmax(std::span<const double> logits) {
  if (logits.empty()) throw InvalidArgument("softmax of an empty vector");
  for (double v : logits) {
    if (!std::isfinite(v)) throw NonFiniteInput("softmax input is not finite");
  }
  std::vector<double> out(logits.size());
  softmaxInto(logits, out);
  return out;
}

double crossEntropy(std::span<const double> probabilities, std::size_t target) {
  if (target >= probabilities.size()) {
    throw InvalidArgument("cross-entropy target " + std::to_string(target) +
                          " out of range for " +
                          std::to_string(probabilities.size()) + " classes");
  }
  return -std::log(std::max(probabilities[target], kProbabilityFloor));
}

namespace op {

Value add(Value a, Value b) {
  Graph& g = graphOf(a, b);
  const Tensor& x = a.data();
  const Tensor& y = b.data();
  requireSameShape(x, y, "add");
  Tensor out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += y[i];
  const int ia = a.id(), ib = b.id();
  return g.record(std::move(out), {ia, ib}, [ia, ib](Graph& g, int self) {
    const Tensor& d = g.grad(self);
    for (int in : {ia, ib}) {
      if (!g.needsGrad(in)) continue;
      Tensor& gi = g.gradSlot(in);
      for (std::size_t i = 0; i < d.size(); ++i) gi[i] += d[i];
    }
  });
}

Value sub(Value a, Value b) {
  Graph& g = graphOf(a, b);
  const Tensor& x = a.data();
  const Tensor& y = b.data();
  requireSameShape(x, y, "sub");
  Tensor out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= y[i];
  const int ia = a.id(), ib = b.id();
  return g.record(std::move(out), {ia, ib}, [ia, ib](Graph& g, int self) {
    const Tensor& d = g.grad(self);
    if (g.needsGrad(ia)) {
      Tensor& ga = g.gradSlot(ia);
      for (std::size_t i = 0; i < d.size(); ++i) ga[i] += d[i];
    }
    if (g.needsGrad(ib)) {
      Tensor& gb = g.gradSlot(ib);
      for (std::size_t i = 0; i < d.size(); ++i) gb[i] -= d[i];
    }
  });
}

Value mul(Value a, Value b) {
  Graph& g = graphOf(a, b);
  const Tensor& x = a.data();
  const Tensor& y = b.data();
  requireSameShape(x, y, "mul");
  Tensor out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= y[i];
  const int ia = a.id(), ib = b.id();
  return g.record(std::move(out), {ia, ib}, [ia, ib](Graph& g, int self) {
    const Tensor& d = g.grad(self);
    const Tensor& x = g.data(ia);
    const Tensor& y = g.data(ib);
    // ia == ib (x*x) is handled by the two accumulations below.
    if (g.needsGrad(ia)) {
      Tensor& ga = g.gradSlot(ia);
      for (std::size_t i = 0; i < d.size(); ++i) ga[i] += d[i] * y[i];
    }
    if (g.needsGrad(ib)) {
      Tensor& gb = g.gradSlot(ib);
      for (std::size_t i = 0; i < d.size(); ++i) gb[i] += d[i] * x[i];
    }
  });
}

Value scale(Value a, double factor) {
  Graph& g = graphOf(a);
  Tensor out = a.data();
  for (double& v : out.values()) v *= factor;
  const int ia = a.id();
  return g.record(std::move(out), {ia}, [ia, factor](Graph& g, int self) {
    const Tensor& d = g.grad(self);
    Tensor& ga = g.gradSlot(ia);
    for (std::size_t i = 0; i < d.size(); ++i) ga[i] += d[i] * factor;
  });
}

Value sigmoid(Value x) {
  Graph& g = graphOf(x);
  Tensor out = x.data();
  for (double& v : out.values()) v = 1.0 / (1.0 + std::exp(-v));
  const int ix = x.id();
  return g.record(std::move(out), {ix}, [ix](Graph& g, int self) {
    const Tensor& d = g.grad(self);
    const Tensor& y = g.data(self);
    Tensor& gx = g.gradSlot(ix);
    for (std::size_t i = 0; i < d.size(); ++i) gx[i] += d[i] * y[i] * (1.0 - y[i]);
  });
}

Value tanh(Value x) {
  Graph& g = graphOf(x);
  Tensor out = x.data();
  for (double& v : out.values()) v = std::tanh(v);
  const int ix = x.id();
  return g.record(std::move(out), {ix}, [ix](Graph& g, int self) {
    const Tensor& d = g.grad(self);
    const Tensor& y = g.data(self);
    Tensor& gx = g.gradSlot(ix);
    for (std::size_t i = 0; i < d.size(); ++i) gx[i] += d[i] * (1.0 - y[i] * y[i]);
  });
}

Value sum(Value x) {
  Graph& g = graphOf(x);
  double s = 0.0;
  for (double v : x.data().values()) s += v;
  const int ix = x.id();
  return g.record(Tensor::fromVector({s}), {ix}, [ix](Graph& g, int self) {
    const double d = g.grad(self)[0];
    Tensor& gx = g.gradSlot(ix);
    for (double& v : gx.values()) v += d;
  });
}

Value dot(Value a, Value b) {
  Graph& g = graphOf(a, b);
  const Tensor& x = a.data();
  const Tensor& y = b.data();
  requireSameShape(x, y, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  const int ia = a.id(), ib = b.id();
  return g.record(Tensor::fromVector({s}), {ia, ib}, [ia, ib](Graph& g, int self) {
    const double d = g.grad(self)[0];
    const Tensor& x = g.data(ia);
    const Tensor& y = g.data(ib);
    if (g.needsGrad(ia)) {
      Tensor& ga = g.gradSlot(ia);
      for (std::size_t i = 0; i < x.size(); ++i) ga[i] += d * y[i];
    }
    if (g.needsGrad(ib)) {
      Tensor& gb = g.gradSlot(ib);
      for (std::size_t i = 0; i < x.size(); ++i) gb[i] += d * x[i];
    }
  });
}

namespace {

// y += M x
void gemvAccumulate(const Tensor& m, const double* x, double* y) {
  const std::size_t rows = m.rows(), cols = m.cols();
  const double* w = m.raw();
  for (std::size_t r = 0; r < rows; ++r) {
    const double* wr = w + r * cols;
    double acc = 0.0;
    for (std::size_t c = 0; c < cols; ++c) acc += wr[c] * x[c];
    y[r] += acc;
  }
}

// Backward of y = M x given dy: dM += dy x^T, dx += M^T dy.
void gemvBackward(Graph& g, int im, int ix, const double* dy) {
  const Tensor& m = g.data(im);
  const std::size_t rows = m.rows(), cols = m.cols();
  if (g.needsGrad(im)) {
    const double* x = g.data(ix).raw();
    double* dm = g.gradSlot(im).raw();
    for (std::size_t r = 0; r < rows; ++r) {
      const double d = dy[r];
      if (d == 0.0) continue;
      double* dr = dm + r * cols;
      for (std::size_t c = 0; c < cols; ++c) dr[c] += d * x[c];
    }
  }
  if (g.needsGrad(ix)) {
    const double* w = m.raw();
    double* dx = g.gradSlot(ix).raw();
    for (std::size_t r = 0; r < rows; ++r) {
      const double d = dy[r];
      if (d == 0.0) continue;
      const double* wr = w + r * cols;
      for (std::size_t c = 0; c < cols; ++c) dx[c] += d * wr[c];
    }
  }
}

}  // namespace

Value matvec(Value m, Value x) {
  Graph& g = graphOf(m, x);
  const Tensor& mt = m.data();
  const Tensor& xt = x.data();
  requireMatrix(mt, "matvec");
  requireVector(xt, "matvec");
  if (mt.cols() != xt.size()) {
    throw ShapeError("matvec: " + mt.shapeString() + " x " + xt.shapeString());
  }
  Tensor out = Tensor::vector(mt.rows());
  gemvAccumulate(mt, xt.raw(), out.raw());
  const int im = m.id(), ix = x.id();
  return g.record(std::move(out), {im, ix}, [im, ix](Graph& g, int self) {
    gemvBackward(g, im, ix, g.grad(self).raw());
  });
}

Value affine(Value w, Value x, Value b) {
  Graph& g = graphOf(w, x);
  if (b.graph() != &g) throw InvalidArgument("operands belong to different graphs");
  const Tensor& wt = w.data();
  const Tensor& xt = x.data();
  const Tensor& bt = b.data();
  requireMatrix(wt, "affine");
  requireVector(xt, "affine");
  requireVector(bt, "affine");
  if (wt.cols() != xt.size() || wt.rows() != bt.size()) {
    throw ShapeError("affine: " + wt.shapeString() + " x " + xt.shapeString() +
                     " + " + bt.shapeString());
  }
  Tensor out = bt;
  gemvAccumulate(wt, xt.raw(), out.raw());
  const int iw = w.id(), ix = x.id(), ib = b.id();
  return g.record(std::move(out), {iw, ix, ib}, [iw, ix, ib](Graph& g, int self) {
    const Tensor& d = g.grad(self);
    gemvBackward(g, iw, ix, d.raw());
    if (g.needsGrad(ib)) {
      Tensor& gb = g.gradSlot(ib);
      for (std::size_t i = 0; i < d.size(); ++i) gb[i] += d[i];
    }
  });
}

Value matvecT(Value m, Value x) {
  Graph& g = graphOf(m, x);
  const Tensor& mt = m.data();
  const Tensor& xt = x.data();
  requireMatrix(mt, "matvecT");
  requireVector(xt, "matvecT");
  if (mt.rows() != xt.size()) {
    throw ShapeError("matvecT: " + mt.shapeString() + "^T x " + xt.shapeString());
  }
  const std::size_t rows = mt.rows(), cols = mt.cols();
  Tensor out = Tensor::vector(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const double s = xt[r];
    const double* mr = mt.raw() + r * cols;
    for (std::size_t c = 0; c < cols; ++c) out[c] += s * mr[c];
  }
  const int im = m.id(), ix = x.id();
  return g.record(std::move(out), {im, ix}, [im, ix](Graph& g, int self) {
    const Tensor& d = g.grad(self);
    const Tensor& mt = g.data(im);
    const std::size_t rows = mt.rows(), cols = mt.cols();
    if (g.needsGrad(im)) {
      const Tensor& xt = g.data(ix);
      Tensor& gm = g.gradSlot(im);
      for (std::size_t r = 0; r < rows; ++r) {
        double* gr = gm.raw() + r * cols;
        for (std::size_t c = 0; c < cols; ++c) gr[c] += xt[r] * d[c];
      }
    }
    if (g.needsGrad(ix)) {
      Tensor& gx = g.gradSlot(ix);
      for (std::size_t r = 0; r < rows; ++r) {
        const double* mr = mt.raw() + r * cols;
        double acc = 0.0;
        for (std::size_t c = 0; c < cols; ++c) acc += mr[c] * d[c];
        gx[r] += acc;
      }
    }
  });
}

Value matmulNT(Value a, Value b) {
  Graph& g = graphOf(a, b);
  const Tensor& at = a.data();
  const Tensor& bt = b.data();
  requireMatrix(at, "matmulNT");
  requireMatrix(bt, "matmulNT");
  if (at.cols() != bt.cols()) {
    throw ShapeError("matmulNT: " + at.shapeString() + " x " + bt.shapeString() +
                     "^T");
  }
  const std::size_t m = at.rows(), n = bt.rows(), k = at.cols();
  Tensor out = Tensor::matrix(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    const double* ar = at.raw() + i * k;
    for (std::size_t j = 0; j < n; ++j) {
      const double* br = bt.raw() + j * k;
      double acc = 0.0;
      for (std::size_t p = 0; p < k; ++p) acc += ar[p] * br[p];
      out.at(i, j) = acc;
    }
  }
  const int ia = a.id(), ib = b.id();
  return g.record(std::move(out), {ia, ib}, [ia, ib](Graph& g, int self) {
    const Tensor& d = g.grad(self);
    const Tensor& at = g.data(ia);
    const Tensor& bt = g.data(ib);
    const std::size_t m = at.rows(), n = bt.rows(), k = at.cols();
    if (g.needsGrad(ia)) {
      Tensor& ga = g.gradSlot(ia);
      for (std::size_t i = 0; i < m; ++i) {
        double* gr = ga.raw() + i * k;
        for (std::size_t j = 0; j < n; ++j) {
          const double dij = d.at(i, j);
          const double* br = bt.raw() + j * k;
          for (std::size_t p = 0; p < k; ++p) gr[p] += dij * br[p];
        }
      }
    }
    if (g.needsGrad(ib)) {
      Tensor& gb = g.gradSlot(ib);
      for (std::size_t i = 0; i < m; ++i) {
        const double* ar = at.raw() + i * k;
        for (std::size_t j = 0; j < n; ++j) {
          const double dij = d.at(i, j);
          double* gr = gb.raw() + j * k;
          for (std::size_t p = 0; p < k; ++p) gr[p] += dij * ar[p];
        }
      }
    }
  });
}

Value addRowBroadcast(Value m, Value v) {
  Graph& g = graphOf(m, v);
  const Tensor& mt = m.data();
  const Tensor& vt = v.data();
  requireMatrix(mt, "addRowBroadcast");
  requireVector(vt, "addRowBroadcast");
  if (mt.cols() != vt.size()) {
    throw ShapeError("addRowBroadcast: " + mt.shapeString() + " + " +
                     vt.shapeString());
  }
  Tensor out = mt;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto row = out.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) row[c] += vt[c];
  }
  const int im = m.id(), iv = v.id();
  return g.record(std::move(out), {im, iv}, [im, iv](Graph& g, int self) {
    const Tensor& d = g.grad(self);
    if (g.needsGrad(im)) {
      Tensor& gm = g.gradSlot(im);
      for (std::size_t i = 0; i < d.size(); ++i) gm[i] += d[i];
    }
    if (g.needsGrad(iv)) {
      Tensor& gv = g.gradSlot(iv);
      for (std::size_t r = 0; r < d.rows(); ++r) {
        auto row = d.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) gv[c] += row[c];
      }
    }
  });
}

Value concat(const std::vector<Value>& parts) {
  if (parts.empty()) throw InvalidArgument("concat of nothing");
  Graph& g = graphOf(parts.front());
  std::vector<int> ids;
  std::vector<std::size_t> offsets;
  std::size_t total = 0;
  for (const Value& p : parts) {
    if (p.graph() != &g) throw InvalidArgument("operands belong to different graphs");
    requireVector(p.data(), "concat");
    ids.push_back(p.id());
    offsets.push_back(total);
    total += p.data().size();
  }
  Tensor out = Tensor::vector(total);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const Tensor& t = parts[k].data();
    std::copy(t.raw(), t.raw() + t.size(), out.raw() + offsets[k]);
  }
  return g.record(std::move(out), ids, [ids, offsets](Graph& g, int self) {
    const Tensor& d = g.grad(self);
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (!g.needsGrad(ids[k])) continue;
      Tensor& gi = g.gradSlot(ids[k]);
      for (std::size_t i = 0; i < gi.size(); ++i) gi[i] += d[offsets[k] + i];
    }
  });
}

Value slice(Value x, std::size_t offset, std::size_t length) {
  Graph& g = graphOf(x);
  const Tensor& xt = x.data();
  requireVector(xt, "slice");
  if (offset + length > xt.size()) {
    throw ShapeError("slice [" + std::to_string(offset) + ", " +
                     std::to_string(offset + length) + ") of " + xt.shapeString());
  }
  Tensor out = Tensor::vector(length);
  std::copy(xt.raw() + offset, xt.raw() + offset + length, out.raw());
  const int ix = x.id();
  return g.record(std::move(out), {ix}, [ix, offset](Graph& g, int self) {
    const Tensor& d = g.grad(self);
    Tensor& gx = g.gradSlot(ix);
    for (std::size_t i = 0; i < d.size(); ++i) gx[offset + i] += d[i];
  });
}

Value stackRows(const std::vector<Value>& rows) {
  if (rows.empty()) throw InvalidArgument("stackRows of nothing");
  Graph& g = graphOf(rows.front());
  const std::size_t width = rows.front().data().size();
  std::vector<int> ids;
  Tensor out = Tensor::matrix(rows.size(), width);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].graph() != &g) throw InvalidArgument("operands belong to different graphs");
    const Tensor& t = rows[r].data();
    requireVector(t, "stackRows");
    if (t.size() != width) throw ShapeError("stackRows: ragged rows");
    std::copy(t.raw(), t.raw() + width, out.raw() + r * width);
    ids.push_back(rows[r].id());
  }
  return g.record(std::move(out), ids, [ids, width](Graph& g, int self) {
    const Tensor& d = g.grad(self);
    for (std::size_t r = 0; r < ids.size(); ++r) {
      if (!g.needsGrad(ids[r])) continue;
      Tensor& gr = g.gradSlot(ids[r]);
      const double* dr = d.raw() + r * width;
      for (std::size_t c = 0; c < width; ++c) gr[c] += dr[c];
    }
  });
}

Value row(Value m, std::size_t r) {
  Graph& g = graphOf(m);
  const Tensor& mt = m.data();
  requireMatrix(mt, "row");
  if (r >= mt.rows()) {
    throw ShapeError("row " + std::to_string(r) + " of " + mt.shapeString());
  }
  auto src = mt.row(r);
  Tensor out = Tensor::fromVector(std::vector<double>(src.begin(), src.end()));
  const int im = m.id();
  return g.record(std::move(out), {im}, [im, r](Graph& g, int self) {
    const Tensor& d = g.grad(self);
    auto dst = g.gradSlot(im).row(r);
    for (std::size_t c = 0; c < dst.size(); ++c) dst[c] += d[c];
  });
}

Value meanRows(Value m, std::size_t count) {
  Graph& g = graphOf(m);
  const Tensor& mt = m.data();
  requireMatrix(mt, "meanRows");
  if (count == 0 || count > mt.rows()) {
    throw ShapeError("meanRows over " + std::to_string(count) + " rows of " +
                     mt.shapeString());
  }
  Tensor out = Tensor::vector(mt.cols());
  for (std::size_t r = 0; r < count; ++r) {
    auto src = mt.row(r);
    for (std::size_t c = 0; c < src.size(); ++c) out[c] += src[c];
  }
  const double inv = 1.0 / static_cast<double>(count);
  for (double& v : out.values()) v *= inv;
  const int im = m.id();
  return g.record(std::move(out), {im}, [im, count, inv](Graph& g, int self) {
    const Tensor& d = g.grad(self);
    Tensor& gm = g.gradSlot(im);
    for (std::size_t r = 0; r < count; ++r) {
      auto dst = gm.row(r);
      for (std::size_t c = 0; c < dst.size(); ++c) dst[c] += d[c] * inv;
    }
  });
}

Value softmax(Value logits) {
  Graph& g = graphOf(logits);
  const Tensor& x = logits.data();
  requireVector(x, "softmax");
  Tensor out = Tensor::fromVector(mlas::softmax(x.values()));
  const int ix = logits.id();
  return g.record(std::move(out), {ix}, [ix](Graph& g, int self) {
    const Tensor& d = g.grad(self);
    const Tensor& p = g.data(self);
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += d[i] * p[i];
    Tensor& gx = g.gradSlot(ix);
    for (std::size_t i = 0; i < p.size(); ++i) gx[i] += p[i] * (d[i] - s);
  });
}

Value crossEntropy(Value probabilities, std::size_t target) {
  Graph& g = graphOf(probabilities);
  const Tensor& p = probabilities.data();
  requireVector(p, "crossEntropy");
  const double loss = mlas::crossEntropy(p.values(), target);
  const int ip = probabilities.id();
  return g.record(Tensor::fromVector({loss}), {ip}, [ip, target](Graph& g, int self) {
    const double d = g.grad(self)[0];
    const double pt = g.data(ip)[target];
    // The clamp is flat below the floor.
    if (pt <= kProbabilityFloor) return;
    g.gradSlot(ip)[target] += -d / pt;
  });
}

}  // namespace op
}  // namespace mlas
