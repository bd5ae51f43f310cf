// mlas/numerics/graph.h
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

#ifndef MLAS_NUMERICS_GRAPH_H_
#define MLAS_NUMERICS_GRAPH_H_

#include <cstddef>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mlas/numerics/tensor.h"

namespace mlas {

class Graph;

// Named learnable tensors. Insertion order is the canonical order used by
// checkpoints and gradient buffers.
class ParamSet {
 public:
  std::size_t add(std::string name, Tensor init);

  std::size_t size() const { return values_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  Tensor& value(std::size_t i) { return values_[i]; }
  const Tensor& value(std::size_t i) const { return values_[i]; }

  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t indexOf(std::string_view name) const;  // throws InvalidArgument
  Tensor& operator[](std::string_view name) { return values_[indexOf(name)]; }
  const Tensor& operator[](std::string_view name) const {
    return values_[indexOf(name)];
  }

  std::size_t scalarCount() const;
  double squaredNorm() const;

  friend bool operator==(const ParamSet& a, const ParamSet& b) {
    return a.names_ == b.names_ && a.values_ == b.values_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Tensor> values_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Gradient buffer shaped like a ParamSet.
class GradSet {
 public:
  GradSet() = default;
  explicit GradSet(const ParamSet& params);

  std::size_t size() const { return grads_.size(); }
  Tensor& operator[](std::size_t i) { return grads_[i]; }
  const Tensor& operator[](std::size_t i) const { return grads_[i]; }

  void zero();
  void scale(double factor);
  void addFrom(const GradSet& other);
  double norm() const;

 private:
  std::vector<Tensor> grads_;
};

// Handle to a node in a Graph: the node's data, its gradient, and its id.
class Value {
 public:
  Value() = default;

  bool valid() const { return graph_ != nullptr; }
  int id() const { return id_; }
  Graph* graph() const { return graph_; }

  const Tensor& data() const;
  // Gradient of the last backward() target w.r.t. this value. All-zero
  // (shape-matched) when backward has not reached the node.
  const Tensor& grad() const;
  std::size_t size() const { return data().size(); }
  double scalar() const;

 private:
  friend class Graph;
  Value(Graph* graph, int id) : graph_(graph), id_(id) {}

  Graph* graph_ = nullptr;
  int id_ = -1;
};

// Define-by-run computation tape. Nodes are appended in evaluation order,
// so reverse id order is a valid topological order for backward().
//
// A Graph belongs to one thread. Parameter leaves reference the ParamSet
// they were created from, which must outlive the graph and stay unmodified
// while the graph is alive.
class Graph {
 public:
  using BackwardFn = std::function<void(Graph&, int self)>;

  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  // Disabling gradients turns the graph into a plain evaluator: no
  // backward closures are retained.
  void setGradEnabled(bool enabled) { gradEnabled_ = enabled; }
  bool gradEnabled() const { return gradEnabled_; }

  Value constant(Tensor value);
  Value variable(Tensor value);
  // One leaf per parameter per graph; repeated calls return the same node.
  Value param(const ParamSet& params, std::size_t index);
  Value param(const ParamSet& params, std::string_view name);

  // Records an operation result. `fn` is dropped when no input needs a
  // gradient.
  Value record(Tensor value, std::initializer_list<int> inputs, BackwardFn fn);
  Value record(Tensor value, const std::vector<int>& inputs, BackwardFn fn);

  // Propagates d(loss)/d(node) to every node reachable from `loss`.
  // Interior gradients are recomputed on each call; leaf gradients
  // (variables and parameters) accumulate across calls until
  // zeroLeafGrads().
  void backward(Value loss);
  void zeroLeafGrads();

  // Adds the parameter-leaf gradients into `grads` (indexed like the
  // ParamSet the leaves came from).
  void accumulateParamGrads(GradSet& grads) const;

  std::size_t size() const { return nodes_.size(); }
  const Tensor& data(int id) const;
  const Tensor& grad(int id) const;
  bool needsGrad(int id) const { return nodes_[id].needsGrad; }
  // Gradient slot of `id`, allocated (zero) on first use.
  Tensor& gradSlot(int id);

 private:
  struct Node {
    Tensor value;
    const Tensor* external = nullptr;
    Tensor grad;
    BackwardFn backward;
    bool needsGrad = false;
    bool leaf = false;
    int paramIndex = -1;
  };

  Value push(Node node);

  std::deque<Node> nodes_;
  const ParamSet* boundParams_ = nullptr;
  std::unordered_map<std::size_t, int> paramNodes_;
  bool gradEnabled_ = true;
};

}  // namespace mlas

#endif  // MLAS_NUMERICS_GRAPH_H_
