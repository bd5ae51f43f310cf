// mlas/numerics/tensor.cc
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

#include "mlas/numerics/tensor.h"

#include <algorithm>
#include <cmath>

#include "mlas/common/errors.h"

namespace mlas {

Tensor Tensor::vector(std::size_t n, double fill) {
  Tensor t;
  t.rank_ = 1;
  t.rows_ = n;
  t.cols_ = 1;
  t.data_.assign(n, fill);
  return t;
}

Tensor Tensor::matrix(std::size_t rows, std::size_t cols, double fill) {
  Tensor t;
  t.rank_ = 2;
  t.rows_ = rows;
  t.cols_ = cols;
  t.data_.assign(rows * cols, fill);
  return t;
}

Tensor Tensor::fromVector(std::vector<double> values) {
  Tensor t;
  t.rank_ = 1;
  t.rows_ = values.size();
  t.cols_ = 1;
  t.data_ = std::move(values);
  return t;
}

Tensor Tensor::fromMatrix(std::size_t rows, std::size_t cols,
                          std::vector<double> values) {
  if (values.size() != rows * cols) {
    throw ShapeError("matrix data has " + std::to_string(values.size()) +
                     " entries, expected " + std::to_string(rows * cols));
  }
  Tensor t;
  t.rank_ = 2;
  t.rows_ = rows;
  t.cols_ = cols;
  t.data_ = std::move(values);
  return t;
}

Tensor Tensor::zerosLike(const Tensor& other) {
  Tensor t;
  t.rank_ = other.rank_;
  t.rows_ = other.rows_;
  t.cols_ = other.cols_;
  t.data_.assign(other.data_.size(), 0.0);
  return t;
}

std::string Tensor::shapeString() const {
  if (rank_ == 1) return "[" + std::to_string(rows_) + "]";
  return "[" + std::to_string(rows_) + "x" + std::to_string(cols_) + "]";
}

void Tensor::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

bool Tensor::allFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace mlas
