// mlas/numerics/graph.cc
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

#include "mlas/numerics/graph.h"

#include <cmath>

#include "mlas/common/errors.h"

namespace mlas {

// ---------------------------------------------------------------- ParamSet

std::size_t ParamSet::add(std::string name, Tensor init) {
  if (index_.count(name) != 0) {
    throw InvalidArgument("duplicate parameter name: " + name);
  }
  const std::size_t i = values_.size();
  index_.emplace(name, i);
  names_.push_back(std::move(name));
  values_.push_back(std::move(init));
  return i;
}

std::optional<std::size_t> ParamSet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ParamSet::indexOf(std::string_view name) const {
  auto i = find(name);
  if (!i) throw InvalidArgument("unknown parameter: " + std::string(name));
  return *i;
}

std::size_t ParamSet::scalarCount() const {
  std::size_t n = 0;
  for (const auto& v : values_) n += v.size();
  return n;
}

double ParamSet::squaredNorm() const {
  double s = 0.0;
  for (const auto& v : values_) {
    for (double x : v.values()) s += x * x;
  }
  return s;
}

// ----------------------------------------------------------------- GradSet

GradSet::GradSet(const ParamSet& params) {
  grads_.reserve(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    grads_.push_back(Tensor::zerosLike(params.value(i)));
  }
}

void GradSet::zero() {
  for (auto& g : grads_) g.fill(0.0);
}

void GradSet::scale(double factor) {
  for (auto& g : grads_) {
    for (double& x : g.values()) x *= factor;
  }
}

void GradSet::addFrom(const GradSet& other) {
  if (other.size() != size()) throw ShapeError("gradient set size mismatch");
  for (std::size_t i = 0; i < grads_.size(); ++i) {
    auto dst = grads_[i].values();
    auto src = other.grads_[i].values();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += src[k];
  }
}

double GradSet::norm() const {
  double s = 0.0;
  for (const auto& g : grads_) {
    for (double x : g.values()) s += x * x;
  }
  return std::sqrt(s);
}

// ------------------------------------------------------------------- Value

const Tensor& Value::data() const { return graph_->data(id_); }
const Tensor& Value::grad() const { return graph_->grad(id_); }

double Value::scalar() const {
  const Tensor& t = data();
  if (t.size() != 1) {
    throw ShapeError("scalar() on value of shape " + t.shapeString());
  }
  return t[0];
}

// ------------------------------------------------------------------- Graph

Value Graph::push(Node node) {
  nodes_.push_back(std::move(node));
  return Value(this, static_cast<int>(nodes_.size() - 1));
}

Value Graph::constant(Tensor value) {
  Node n;
  n.value = std::move(value);
  n.leaf = true;
  return push(std::move(n));
}

Value Graph::variable(Tensor value) {
  Node n;
  n.value = std::move(value);
  n.leaf = true;
  n.needsGrad = gradEnabled_;
  return push(std::move(n));
}

Value Graph::param(const ParamSet& params, std::size_t index) {
  if (boundParams_ == nullptr) {
    boundParams_ = &params;
  } else if (boundParams_ != &params) {
    throw InvalidArgument("a graph can bind parameters from one ParamSet only");
  }
  if (index >= params.size()) throw InvalidArgument("parameter index out of range");
  auto it = paramNodes_.find(index);
  if (it != paramNodes_.end()) return Value(this, it->second);
  Node n;
  n.external = &params.value(index);
  n.leaf = true;
  n.needsGrad = gradEnabled_;
  n.paramIndex = static_cast<int>(index);
  Value v = push(std::move(n));
  paramNodes_.emplace(index, v.id());
  return v;
}

Value Graph::param(const ParamSet& params, std::string_view name) {
  return param(params, params.indexOf(name));
}

Value Graph::record(Tensor value, std::initializer_list<int> inputs,
                    BackwardFn fn) {
  Node n;
  n.value = std::move(value);
  if (gradEnabled_) {
    for (int in : inputs) {
      if (nodes_[in].needsGrad) {
        n.needsGrad = true;
        break;
      }
    }
  }
  if (n.needsGrad) n.backward = std::move(fn);
  return push(std::move(n));
}

Value Graph::record(Tensor value, const std::vector<int>& inputs, BackwardFn fn) {
  Node n;
  n.value = std::move(value);
  if (gradEnabled_) {
    for (int in : inputs) {
      if (nodes_[in].needsGrad) {
        n.needsGrad = true;
        break;
      }
    }
  }
  if (n.needsGrad) n.backward = std::move(fn);
  return push(std::move(n));
}

const Tensor& Graph::data(int id) const {
  const Node& n = nodes_[id];
  return n.external != nullptr ? *n.external : n.value;
}

const Tensor& Graph::grad(int id) const {
  // Lazily shaped so that untouched nodes still report a zero gradient.
  Node& n = const_cast<Node&>(nodes_[id]);
  if (n.grad.size() != data(id).size()) n.grad = Tensor::zerosLike(data(id));
  return n.grad;
}

Tensor& Graph::gradSlot(int id) {
  Node& n = nodes_[id];
  if (n.grad.size() != data(id).size()) n.grad = Tensor::zerosLike(data(id));
  return n.grad;
}

void Graph::backward(Value loss) {
  if (loss.graph() != this) throw InvalidArgument("loss belongs to another graph");
  if (data(loss.id()).size() != 1) {
    throw InvalidArgument("backward() needs a scalar loss, got shape " +
                          data(loss.id()).shapeString());
  }
  for (auto& n : nodes_) {
    if (!n.leaf) n.grad = Tensor();
  }
  gradSlot(loss.id())[0] += 1.0;
  for (int id = loss.id(); id >= 0; --id) {
    Node& n = nodes_[id];
    if (!n.backward || n.grad.empty()) continue;
    n.backward(*this, id);
  }
}

void Graph::zeroLeafGrads() {
  for (auto& n : nodes_) {
    if (n.leaf) n.grad = Tensor();
  }
}

void Graph::accumulateParamGrads(GradSet& grads) const {
  for (const auto& [index, id] : paramNodes_) {
    const Node& n = nodes_[id];
    if (n.grad.empty()) continue;
    Tensor& dst = grads[index];
    if (!dst.sameShape(n.grad)) throw ShapeError("gradient buffer shape mismatch");
    auto d = dst.values();
    auto s = n.grad.values();
    for (std::size_t k = 0; k < d.size(); ++k) d[k] += s[k];
  }
}

}  // namespace mlas
