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

// Independent reference computations for the unit and acceptance tests.
#ifndef TTEMB_TESTS_ORACLES_H_
#define TTEMB_TESTS_ORACLES_H_

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ttemb/tensor.h"
#include "ttemb/tt.h"

namespace ttemb::oracle {

// Singular values (descending) from the eigenvalues of M^T M, computed in
// long double so the tail sums are accurate well below 1e-15.
inline std::vector<long double> singular_values(const Matrix& m) {
  using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  Mat a(m.rows, m.cols);
  for (std::size_t j = 0; j < m.cols; ++j)
    for (std::size_t i = 0; i < m.rows; ++i) a(i, j) = m(i, j);
  const Mat g = m.rows >= m.cols ? Mat(a.transpose() * a) : Mat(a * a.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  std::vector<long double> s;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    s.push_back(std::sqrt(std::max<long double>(0, es.eigenvalues()(i))));
  std::sort(s.rbegin(), s.rend());
  return s;
}

inline long double tail_norm(const std::vector<long double>& s, std::size_t keep) {
  long double t = 0;
  for (std::size_t i = keep; i < s.size(); ++i) t += s[i] * s[i];
  return std::sqrt(t);
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (double& v : m.data) v = g(rng);
  return m;
}

inline std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = g(rng);
  return v;
}

// Entry (i_1..i_N) of the chain G1[:, i_1, :] * ... * GN[:, i_N, :], evaluated
// one multi-index at a time with explicit nested sums over the ranks.
inline std::vector<double> brute_force_reconstruct(const TTVector& tt) {
  const std::size_t n = tt.order();
  const std::size_t d = shape_product(tt.shape);
  std::vector<double> out(d);
  std::vector<std::size_t> idx(n);
  for (std::size_t off = 0; off < d; ++off) {
    std::size_t rem = off;
    for (std::size_t k = 0; k < n; ++k) {
      idx[k] = rem % tt.shape[k];
      rem /= tt.shape[k];
    }
    // row vector over r_k, starting from r_0 = 1
    std::vector<double> row{1.0};
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t r0 = tt.ranks[k], r1 = tt.ranks[k + 1];
      std::vector<double> next(r1, 0.0);
      for (std::size_t b = 0; b < r1; ++b)
        for (std::size_t a = 0; a < r0; ++a)
          next[b] += row[a] * tt.cores[k].at({a, idx[k], b});
      row = std::move(next);
    }
    out[off] = row[0];
  }
  return out;
}

// Random TT with the given shape and ranks.
inline TTVector random_tt(const Shape& shape, const std::vector<std::size_t>& ranks,
                          std::mt19937_64& rng) {
  TTVector tt;
  tt.shape = shape;
  tt.ranks = ranks;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    tt.cores.emplace_back(Shape{ranks[k], shape[k], ranks[k + 1]},
                          random_vector(ranks[k] * shape[k] * ranks[k + 1], rng));
  }
  return tt;
}

inline double norm(const std::vector<double>& v) {
  long double s = 0;
  for (double x : v) s += static_cast<long double>(x) * x;
  return static_cast<double>(std::sqrt(s));
}

inline double distance(const std::vector<double>& a, const std::vector<double>& b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const long double e = static_cast<long double>(a[i]) - b[i];
    s += e * e;
  }
  return static_cast<double>(std::sqrt(s));
}

// Storage by direct enumeration of the TT core sizes.
inline std::uint64_t storage(const Shape& shape, std::size_t r) {
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    std::uint64_t left = 1, right = 1, before = 1, after = 1;
    for (std::size_t j = 0; j < k; ++j) before *= shape[j];
    for (std::size_t j = k + 1; j < shape.size(); ++j) after *= shape[j];
    // interior rank between mode k-1 and k, and between k and k+1
    left = k == 0 ? 1 : std::min<std::uint64_t>(r, std::min(before, after * shape[k]));
    right = k + 1 == shape.size() ? 1
                                  : std::min<std::uint64_t>(r, std::min(before * shape[k], after));
    total += left * shape[k] * right;
  }
  return total;
}

// All ordered factorizations of d into factors >= 2, found by recursion over
// divisors in increasing order (independent of the library's enumeration).
inline void factorizations(std::size_t d, Shape& prefix, std::vector<Shape>& out) {
  if (d == 1) {
    if (!prefix.empty()) out.push_back(prefix);
    return;
  }
  for (std::size_t f = 2; f <= d; ++f) {
    if (d % f) continue;
    prefix.push_back(f);
    factorizations(d / f, prefix, out);
    prefix.pop_back();
  }
}

inline std::vector<Shape> factorizations(std::size_t d) {
  std::vector<Shape> out;
  Shape prefix;
  factorizations(d, prefix, out);
  return out;
}

}  // namespace ttemb::oracle

#endif  // TTEMB_TESTS_ORACLES_H_
