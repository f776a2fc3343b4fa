// Copyright 2026 The ttemb Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TTEMB_TENSOR_H_
#define TTEMB_TENSOR_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ttemb {

using Shape = std::vector<std::size_t>;

// Product of all mode sizes. The empty shape has product 1.
std::size_t shape_product(std::span<const std::size_t> shape);

// Offset of a 0-based multi-index under the little-endian layout: the first
// index varies fastest, offset = sum_k i_k * prod_{p<k} I_p.
std::size_t linear_index(std::span<const std::size_t> shape,
                         std::span<const std::size_t> index);

// Inverse of linear_index.
void multi_index(std::span<const std::size_t> shape, std::size_t offset,
                 std::span<std::size_t> index);

// Dense column-major matrix. Column-major is the order-2 case of the tensor
// layout, so reshapes between the two never move data.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  Matrix(std::size_t r, std::size_t c, std::vector<double> values);

  static Matrix identity(std::size_t n);

  double& operator()(std::size_t i, std::size_t j) { return data[i + rows * j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data[i + rows * j];
  }
  std::span<double> col(std::size_t j) { return {data.data() + rows * j, rows}; }
  std::span<const double> col(std::size_t j) const {
    return {data.data() + rows * j, rows};
  }
};

Matrix transpose(const Matrix& m);
Matrix multiply(const Matrix& a, const Matrix& b);
double frobenius_norm(std::span<const double> values);

// Dense order-N tensor, N >= 1, every mode size >= 1. Immutable once built.
class Tensor {
 public:
  // Throws ShapeMismatch when data.size() != product(shape) or when the shape
  // is empty or has a zero-sized mode.
  Tensor(Shape shape, std::vector<double> data);

  static Tensor zeros(Shape shape);

  const Shape& shape() const { return shape_; }
  std::size_t order() const { return shape_.size(); }
  std::size_t dim(std::size_t mode) const { return shape_[mode]; }
  std::size_t size() const { return data_.size(); }
  std::span<const double> data() const { return data_; }

  // 0-based multi-index access.
  double at(std::span<const std::size_t> index) const {
    return data_[linear_index(shape_, index)];
  }
  double at(std::initializer_list<std::size_t> index) const {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
  }

 private:
  Shape shape_;
  std::vector<double> data_;
};

// Folds a vector into a tensor of the given shape. ShapeMismatch unless
// prod(shape) == vector.size().
Tensor tensorize(std::span<const double> vector, Shape shape);

std::vector<double> vectorize(const Tensor& t);

// Mode-n unfolding (mode is 0-based). Row index is i_n; the column index is
// the little-endian linear index over the remaining modes in their original
// order. ModeOutOfRange when mode >= order.
Matrix matricize(const Tensor& t, std::size_t mode);

// Contracts mode `mode_a` of `a` with mode `mode_b` of `b` (both 0-based).
// The result keeps a's remaining modes followed by b's remaining modes. A
// result with no remaining modes is returned as shape (1). DimensionMismatch
// when the contracted sizes differ, ModeOutOfRange for bad modes.
Tensor contract(const Tensor& a, const Tensor& b, std::size_t mode_a,
                std::size_t mode_b);

}  // namespace ttemb

#endif  // TTEMB_TENSOR_H_
