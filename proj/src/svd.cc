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

#include "ttemb/svd.h"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <string>

#include "ttemb/error.h"

namespace ttemb {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

// Replaces column j of q with a unit vector orthogonal to columns [0, j).
void complete_column(Matrix& q, std::size_t j) {
  for (std::size_t e = 0; e < q.rows; ++e) {
    std::vector<double> cand(q.rows, 0.0);
    cand[e] = 1.0;
    // Two Gram-Schmidt passes.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        const double proj = dot(cand, q.col(k));
        const auto ck = q.col(k);
        for (std::size_t i = 0; i < q.rows; ++i) cand[i] -= proj * ck[i];
      }
    }
    const double n = frobenius_norm(cand);
    if (n > 0.5) {
      auto cj = q.col(j);
      for (std::size_t i = 0; i < q.rows; ++i) cj[i] = cand[i] / n;
      return;
    }
  }
}

// Column-major working copy in extended precision. Rotations and norms are
// carried in long double so singular values come back within a few ulps.
struct Work {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<long double> data;
  long double* col(std::size_t j) { return data.data() + rows * j; }
};

long double dot_ext(const long double* a, const long double* b, std::size_t n) {
  long double acc = 0.0L;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void rotate_ext(long double* x, long double* y, std::size_t n, long double c, long double s) {
  for (std::size_t i = 0; i < n; ++i) {
    const long double xi = x[i];
    const long double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

// Orthogonalizes the columns of w in place, accumulating the rotations in v.
// w is tall (rows >= cols).
void hestenes(Work& w, Work& v, const SvdOptions& options) {
  const std::size_t n = w.cols;
  // Columns whose squared norm is below this are rounding noise; rotating
  // them against real columns only reshuffles the noise.
  const long double scale = dot_ext(w.data.data(), w.data.data(), w.data.size());
  const long double noise = scale * static_cast<long double>(w.rows) * LDBL_EPSILON * LDBL_EPSILON;
  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const long double alpha = dot_ext(w.col(p), w.col(p), w.rows);
        const long double beta = dot_ext(w.col(q), w.col(q), w.rows);
        const long double gamma = dot_ext(w.col(p), w.col(q), w.rows);
        if (gamma == 0.0L || alpha <= noise || beta <= noise) continue;
        if (std::fabs(gamma) <= options.tolerance * std::sqrt(alpha) * std::sqrt(beta)) {
          continue;
        }
        rotated = true;
        const long double zeta = (beta - alpha) / (2.0L * gamma);
        const long double t = std::copysign(1.0L, zeta) /
                              (std::fabs(zeta) + std::sqrt(1.0L + zeta * zeta));
        const long double c = 1.0L / std::sqrt(1.0L + t * t);
        const long double s = c * t;
        rotate_ext(w.col(p), w.col(q), w.rows, c, s);
        rotate_ext(v.col(p), v.col(q), v.rows, c, s);
      }
    }
    if (!rotated) return;
  }
  throw Error(ErrorCode::kNumericalFailure,
              "Jacobi SVD did not converge in " +
                  std::to_string(options.max_sweeps) + " sweeps");
}

}  // namespace

std::size_t numerical_rank(const std::vector<double>& s, std::size_t rows,
                           std::size_t cols) {
  if (s.empty() || s.front() == 0.0) return 0;
  const double floor =
      static_cast<double>(std::max(rows, cols)) * DBL_EPSILON * s.front();
  std::size_t r = 0;
  while (r < s.size() && s[r] > floor) ++r;
  return r;
}

Svd jacobi_svd(const Matrix& m, const SvdOptions& options) {
  if (m.rows == 0 || m.cols == 0) {
    throw Error(ErrorCode::kShapeMismatch, "SVD of an empty matrix");
  }
  const bool wide = m.cols > m.rows;
  const Matrix src = wide ? transpose(m) : m;
  const std::size_t n = src.cols;
  Work w{src.rows, n, std::vector<long double>(src.data.begin(), src.data.end())};
  Work v{n, n, std::vector<long double>(n * n, 0.0L)};
  for (std::size_t j = 0; j < n; ++j) v.col(j)[j] = 1.0L;
  hestenes(w, v, options);

  std::vector<long double> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = std::sqrt(dot_ext(w.col(j), w.col(j), w.rows));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return norms[a] > norms[b];
  });

  Svd out;
  out.s.resize(n);
  Matrix left(w.rows, n);
  Matrix right(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.s[j] = static_cast<double>(norms[order[j]]);
    const long double* col = v.col(order[j]);
    for (std::size_t i = 0; i < n; ++i) right(i, j) = static_cast<double>(col[i]);
  }
  const std::size_t rank = numerical_rank(out.s, m.rows, m.cols);
  for (std::size_t j = 0; j < n; ++j) {
    if (j < rank) {
      const long double* col = w.col(order[j]);
      for (std::size_t i = 0; i < w.rows; ++i) {
        left(i, j) = static_cast<double>(col[i] / norms[order[j]]);
      }
    } else {
      complete_column(left, j);
    }
  }
  if (wide) {
    out.u = std::move(right);
    out.v = std::move(left);
  } else {
    out.u = std::move(left);
    out.v = std::move(right);
  }
  return out;
}

TruncatedSvd truncated_svd(const Matrix& m, double delta, std::size_t max_rank,
                           const SvdOptions& options) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorCode::kInvalidArgument, "delta must be finite and >= 0");
  }
  if (max_rank == 0) {
    throw Error(ErrorCode::kRankOutOfRange, "max_rank must be >= 1");
  }
  Svd full = jacobi_svd(m, options);
  const std::size_t p = full.s.size();

  // tail[r] = sum of s_j^2 for j >= r, accumulated from the small end.
  std::vector<long double> tail(p + 1, 0.0L);
  for (std::size_t j = p; j-- > 0;) {
    tail[j] = tail[j + 1] + static_cast<long double>(full.s[j]) * full.s[j];
  }

  const long double budget = static_cast<long double>(delta) * delta;
  std::size_t rank = p;
  for (std::size_t r = 1; r <= p; ++r) {
    if (tail[r] <= budget) {
      rank = r;
      break;
    }
  }
  rank = std::min(rank, std::max<std::size_t>(1, numerical_rank(full.s, m.rows, m.cols)));
  rank = std::min(rank, max_rank);

  TruncatedSvd out;
  out.rank = rank;
  out.discarded_norm = static_cast<double>(std::sqrt(tail[rank]));
  out.s.assign(full.s.begin(), full.s.begin() + rank);
  out.u = Matrix(m.rows, rank,
                 std::vector<double>(full.u.data.begin(),
                                     full.u.data.begin() + m.rows * rank));
  out.v = Matrix(m.cols, rank,
                 std::vector<double>(full.v.data.begin(),
                                     full.v.data.begin() + m.cols * rank));
  return out;
}

}  // namespace ttemb
