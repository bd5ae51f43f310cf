// mlas/numerics/tensor.h
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

#ifndef MLAS_NUMERICS_TENSOR_H_
#define MLAS_NUMERICS_TENSOR_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mlas {

// Dense row-major array of doubles, rank 1 (vector) or rank 2 (matrix).
// A rank-1 tensor of length n reports rows() == n and cols() == 1.
class Tensor {
 public:
  Tensor() = default;

  static Tensor vector(std::size_t n, double fill = 0.0);
  static Tensor matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  static Tensor fromVector(std::vector<double> values);
  static Tensor fromMatrix(std::size_t rows, std::size_t cols,
                           std::vector<double> values);
  static Tensor zerosLike(const Tensor& other);

  int rank() const { return rank_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  bool sameShape(const Tensor& other) const {
    return rank_ == other.rank_ && rows_ == other.rows_ && cols_ == other.cols_;
  }
  std::string shapeString() const;

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  double* raw() { return data_.data(); }
  const double* raw() const { return data_.data(); }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }
  double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  void fill(double v);
  bool allFinite() const;

  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.sameShape(b) && a.data_ == b.data_;
  }

 private:
  int rank_ = 1;
  std::size_t rows_ = 0;
  std::size_t cols_ = 1;
  std::vector<double> data_;
};

}  // namespace mlas

#endif  // MLAS_NUMERICS_TENSOR_H_
