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

#ifndef TTEMB_SVD_H_
#define TTEMB_SVD_H_

#include <cstddef>
#include <vector>

#include "ttemb/tensor.h"

namespace ttemb {

struct SvdOptions {
  int max_sweeps = 60;
  // A column pair counts as orthogonal once |<a,b>| <= tol * |a| |b|.
  double tolerance = 1e-12;
};

// Thin SVD m = u * diag(s) * v^T with p = min(rows, cols) singular triplets,
// s non-increasing.
struct Svd {
  Matrix u;  // rows x p, orthonormal columns
  std::vector<double> s;
  Matrix v;  // cols x p, orthonormal columns
};

// One-sided (Hestenes) Jacobi SVD, applied to whichever of m or m^T has
// fewer columns. Throws NumericalFailure if the sweep cap is reached before
// every column pair is orthogonal.
Svd jacobi_svd(const Matrix& m, const SvdOptions& options = {});

// Number of singular values above max(rows, cols) * eps * s_max.
std::size_t numerical_rank(const std::vector<double>& s, std::size_t rows,
                           std::size_t cols);

struct TruncatedSvd {
  Matrix u;  // rows x rank
  std::vector<double> s;
  Matrix v;  // cols x rank
  std::size_t rank = 0;
  double discarded_norm = 0.0;  // Frobenius norm of the dropped tail
};

// Keeps the smallest rank whose discarded tail has Frobenius norm <= delta,
// capped at max_rank. Singular values below the numerical-rank floor are
// treated as exact zeros, so exactly low-rank inputs come back at their true
// rank even when delta is 0. The returned rank is always >= 1.
TruncatedSvd truncated_svd(const Matrix& m, double delta, std::size_t max_rank,
                           const SvdOptions& options = {});

}  // namespace ttemb

#endif  // TTEMB_SVD_H_
