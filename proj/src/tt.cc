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

#include "ttemb/tt.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ttemb/error.h"

namespace ttemb {

void TTVector::validate() const {
  const std::size_t n = shape.size();
  if (n == 0 || ranks.size() != n + 1 || cores.size() != n) {
    throw Error(ErrorCode::kShapeMismatch, "inconsistent TT order");
  }
  if (ranks.front() != 1 || ranks.back() != 1) {
    throw Error(ErrorCode::kShapeMismatch, "boundary ranks must be 1");
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Shape expect{ranks[k], shape[k], ranks[k + 1]};
    if (cores[k].shape() != expect) {
      throw Error(ErrorCode::kShapeMismatch,
                  "core " + std::to_string(k) + " has wrong shape");
    }
  }
}

void CompressSpec::validate() const {
  if (shape.empty()) throw Error(ErrorCode::kShapeMismatch, "empty shape");
  for (std::size_t v : shape) {
    if (v == 0) throw Error(ErrorCode::kShapeMismatch, "zero mode size");
  }
  if (!max_ranks.empty() && max_ranks.size() + 1 != shape.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "expected " + std::to_string(shape.size() - 1) +
                    " rank caps, got " + std::to_string(max_ranks.size()));
  }
  for (std::size_t r : max_ranks) {
    if (r == 0) throw Error(ErrorCode::kRankOutOfRange, "rank cap must be >= 1");
  }
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be finite and >= 0");
  }
}

std::size_t structural_max_rank(std::span<const std::size_t> shape,
                                std::size_t k) {
  std::size_t left = 1;
  std::size_t right = 1;
  for (std::size_t j = 0; j < shape.size(); ++j) (j <= k ? left : right) *= shape[j];
  return std::min(left, right);
}

std::vector<std::size_t> structural_max_ranks(std::span<const std::size_t> shape) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k + 1 < shape.size(); ++k)
    out.push_back(structural_max_rank(shape, k));
  return out;
}

std::vector<std::size_t> uniform_caps(std::size_t order, std::size_t r) {
  return std::vector<std::size_t>(order > 0 ? order - 1 : 0, r);
}

TTVector tt_svd(std::span<const double> x, const CompressSpec& spec,
                const SvdOptions& options) {
  spec.validate();
  const std::size_t d = shape_product(spec.shape);
  if (d != x.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "vector of length " + std::to_string(x.size()) +
                    " does not fold into shape of size " + std::to_string(d));
  }
  const std::size_t n = spec.shape.size();
  TTVector tt;
  tt.shape = spec.shape;

  if (n == 1) {
    tt.ranks = {1, 1};
    tt.cores.emplace_back(Shape{1, d, 1}, std::vector<double>(x.begin(), x.end()));
    return tt;
  }

  const double norm = frobenius_norm(x);
  if (norm == 0.0) {
    tt.ranks.assign(n + 1, 1);
    for (std::size_t k = 0; k < n; ++k) tt.cores.push_back(Tensor::zeros({1, spec.shape[k], 1}));
    return tt;
  }

  const double delta = spec.epsilon / std::sqrt(static_cast<double>(n - 1)) * norm;
  tt.ranks.push_back(1);

  // z holds the not-yet-decomposed remainder as an (r_{k-1} I_k) x rest
  // column-major matrix; reshapes are reinterpretations of the same buffer.
  std::vector<double> z(x.begin(), x.end());
  std::size_t rest = d;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const std::size_t r_prev = tt.ranks.back();
    const std::size_t rows = r_prev * spec.shape[k];
    rest /= spec.shape[k];
    std::size_t cap = std::min(rows, rest);
    if (!spec.max_ranks.empty()) cap = std::min(cap, spec.max_ranks[k]);

    TruncatedSvd t = truncated_svd(Matrix(rows, rest, std::move(z)), delta, cap, options);
    const std::size_t r = t.rank;
    tt.cores.emplace_back(Shape{r_prev, spec.shape[k], r}, std::move(t.u.data));
    tt.ranks.push_back(r);

    // z <- diag(s) * v^T, an r x rest matrix.
    z.assign(r * rest, 0.0);
    for (std::size_t j = 0; j < rest; ++j)
      for (std::size_t a = 0; a < r; ++a) z[a + r * j] = t.s[a] * t.v(j, a);
  }
  tt.cores.emplace_back(Shape{tt.ranks.back(), spec.shape[n - 1], 1}, std::move(z));
  tt.ranks.push_back(1);
  return tt;
}

void reconstruct_into(const TTVector& tt, std::span<double> out) {
  const std::size_t d = tt.source_dim();
  if (out.size() != d) {
    throw Error(ErrorCode::kShapeMismatch, "output buffer has wrong length");
  }
  // running is a (prod_{j<=k} I_j) x r_{k+1} column-major matrix.
  std::vector<double> running(tt.cores[0].data().begin(), tt.cores[0].data().end());
  std::size_t rows = tt.shape[0];
  for (std::size_t k = 1; k < tt.order(); ++k) {
    const auto core = tt.cores[k].data();
    const std::size_t r_in = tt.ranks[k];
    const std::size_t cols = tt.shape[k] * tt.ranks[k + 1];
    std::vector<double> next(rows * cols, 0.0);
    for (std::size_t j = 0; j < cols; ++j) {
      double* dst = next.data() + rows * j;
      for (std::size_t a = 0; a < r_in; ++a) {
        const double w = core[a + r_in * j];
        const double* src = running.data() + rows * a;
        for (std::size_t i = 0; i < rows; ++i) dst[i] += src[i] * w;
      }
    }
    running = std::move(next);
    rows *= tt.shape[k];
  }
  std::copy(running.begin(), running.end(), out.begin());
}

std::vector<double> reconstruct(const TTVector& tt) {
  std::vector<double> out(tt.source_dim());
  reconstruct_into(tt, out);
  return out;
}

std::uint64_t param_count(std::span<const std::size_t> shape,
                          std::span<const std::size_t> ranks) {
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < shape.size(); ++k)
    total += static_cast<std::uint64_t>(ranks[k]) * shape[k] * ranks[k + 1];
  return total;
}

std::uint64_t param_count(const TTVector& tt) {
  return param_count(tt.shape, tt.ranks);
}

double compression_ratio_tt(std::size_t d, const TTVector& tt) {
  return static_cast<double>(d) / static_cast<double>(param_count(tt)) - 1.0;
}

std::uint64_t reconstruction_flops(std::span<const std::size_t> shape,
                                   std::span<const std::size_t> ranks) {
  std::uint64_t flops = 0;
  std::uint64_t prefix = shape.empty() ? 1 : shape[0];
  for (std::size_t k = 1; k < shape.size(); ++k) {
    flops += 2 * prefix * ranks[k] * shape[k] * ranks[k + 1];
    prefix *= shape[k];
  }
  return flops;
}

std::uint64_t reconstruction_flops(const TTVector& tt) {
  return reconstruction_flops(tt.shape, tt.ranks);
}

std::size_t contraction_chain_length(const TTVector& tt) {
  return tt.order() - 1;
}

}  // namespace ttemb
