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

#include "ttemb/tensor.h"

#include <cmath>
#include <string>
#include <utility>

#include "ttemb/error.h"

namespace ttemb {

namespace {

std::string shape_string(std::span<const std::size_t> shape) {
  std::string s = "(";
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(shape[k]);
  }
  return s + ")";
}

// Stride of every mode under the little-endian layout.
std::vector<std::size_t> strides_of(std::span<const std::size_t> shape) {
  std::vector<std::size_t> strides(shape.size());
  std::size_t stride = 1;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    strides[k] = stride;
    stride *= shape[k];
  }
  return strides;
}

// Offsets of every multi-index over all modes except `skip`, enumerated
// little-endian, with the skipped mode held at 0.
std::vector<std::size_t> offsets_without(std::span<const std::size_t> shape,
                                         std::size_t skip) {
  const auto strides = strides_of(shape);
  std::vector<std::size_t> offsets{0};
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (k == skip) continue;
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * shape[k]);
    for (std::size_t i = 0; i < shape[k]; ++i) {
      for (std::size_t base : offsets) next.push_back(base + i * strides[k]);
    }
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace

std::size_t shape_product(std::span<const std::size_t> shape) {
  std::size_t p = 1;
  for (std::size_t v : shape) p *= v;
  return p;
}

std::size_t linear_index(std::span<const std::size_t> shape,
                         std::span<const std::size_t> index) {
  std::size_t offset = 0;
  std::size_t stride = 1;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    offset += index[k] * stride;
    stride *= shape[k];
  }
  return offset;
}

void multi_index(std::span<const std::size_t> shape, std::size_t offset,
                 std::span<std::size_t> index) {
  for (std::size_t k = 0; k < shape.size(); ++k) {
    index[k] = offset % shape[k];
    offset /= shape[k];
  }
}

Matrix::Matrix(std::size_t r, std::size_t c, std::vector<double> values)
    : rows(r), cols(c), data(std::move(values)) {
  if (data.size() != r * c) {
    throw Error(ErrorCode::kShapeMismatch,
                "matrix " + std::to_string(r) + "x" + std::to_string(c) +
                    " given " + std::to_string(data.size()) + " values");
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols, m.rows);
  for (std::size_t j = 0; j < m.cols; ++j)
    for (std::size_t i = 0; i < m.rows; ++i) t(j, i) = m(i, j);
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cannot multiply " + std::to_string(a.rows) + "x" +
                    std::to_string(a.cols) + " by " + std::to_string(b.rows) +
                    "x" + std::to_string(b.cols));
  }
  Matrix c(a.rows, b.cols);
  for (std::size_t j = 0; j < b.cols; ++j) {
    double* out = c.data.data() + c.rows * j;
    for (std::size_t q = 0; q < a.cols; ++q) {
      const double w = b(q, j);
      const double* in = a.data.data() + a.rows * q;
      for (std::size_t i = 0; i < a.rows; ++i) out[i] += in[i] * w;
    }
  }
  return c;
}

double frobenius_norm(std::span<const double> values) {
  // Scaled accumulation so tiny or huge entries neither underflow nor
  // overflow the running sum.
  double scale = 0.0;
  double ssq = 1.0;
  for (double v : values) {
    if (v == 0.0) continue;
    const double a = std::fabs(v);
    if (scale < a) {
      ssq = 1.0 + ssq * (scale / a) * (scale / a);
      scale = a;
    } else {
      ssq += (a / scale) * (a / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

Tensor::Tensor(Shape shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (shape_.empty()) {
    throw Error(ErrorCode::kShapeMismatch, "tensor order must be >= 1");
  }
  for (std::size_t v : shape_) {
    if (v == 0) {
      throw Error(ErrorCode::kShapeMismatch,
                  "zero-sized mode in shape " + shape_string(shape_));
    }
  }
  if (shape_product(shape_) != data_.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "shape " + shape_string(shape_) + " needs " +
                    std::to_string(shape_product(shape_)) + " entries, got " +
                    std::to_string(data_.size()));
  }
}

Tensor Tensor::zeros(Shape shape) {
  const std::size_t n = shape_product(shape);
  return Tensor(std::move(shape), std::vector<double>(n, 0.0));
}

Tensor tensorize(std::span<const double> vector, Shape shape) {
  return Tensor(std::move(shape),
                std::vector<double>(vector.begin(), vector.end()));
}

std::vector<double> vectorize(const Tensor& t) {
  return {t.data().begin(), t.data().end()};
}

Matrix matricize(const Tensor& t, std::size_t mode) {
  if (mode >= t.order()) {
    throw Error(ErrorCode::kModeOutOfRange,
                "mode " + std::to_string(mode) + " of order-" +
                    std::to_string(t.order()) + " tensor");
  }
  const auto offsets = offsets_without(t.shape(), mode);
  const std::size_t stride = strides_of(t.shape())[mode];
  const std::size_t rows = t.dim(mode);
  Matrix m(rows, offsets.size());
  const auto data = t.data();
  for (std::size_t j = 0; j < offsets.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = data[offsets[j] + i * stride];
  return m;
}

Tensor contract(const Tensor& a, const Tensor& b, std::size_t mode_a,
                std::size_t mode_b) {
  if (mode_a >= a.order() || mode_b >= b.order()) {
    throw Error(ErrorCode::kModeOutOfRange, "contraction mode out of range");
  }
  if (a.dim(mode_a) != b.dim(mode_b)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "contracted modes have sizes " + std::to_string(a.dim(mode_a)) +
                    " and " + std::to_string(b.dim(mode_b)));
  }
  const std::size_t q_len = a.dim(mode_a);
  const std::size_t stride_a = strides_of(a.shape())[mode_a];
  const std::size_t stride_b = strides_of(b.shape())[mode_b];
  const auto offs_a = offsets_without(a.shape(), mode_a);
  const auto offs_b = offsets_without(b.shape(), mode_b);

  Shape out_shape;
  for (std::size_t k = 0; k < a.order(); ++k)
    if (k != mode_a) out_shape.push_back(a.dim(k));
  for (std::size_t k = 0; k < b.order(); ++k)
    if (k != mode_b) out_shape.push_back(b.dim(k));
  if (out_shape.empty()) out_shape.push_back(1);

  const auto da = a.data();
  const auto db = b.data();
  std::vector<double> out(offs_a.size() * offs_b.size(), 0.0);
  for (std::size_t jb = 0; jb < offs_b.size(); ++jb) {
    for (std::size_t ia = 0; ia < offs_a.size(); ++ia) {
      double acc = 0.0;
      for (std::size_t q = 0; q < q_len; ++q)
        acc += da[offs_a[ia] + q * stride_a] * db[offs_b[jb] + q * stride_b];
      out[ia + offs_a.size() * jb] = acc;
    }
  }
  return Tensor(std::move(out_shape), std::move(out));
}

}  // namespace ttemb
