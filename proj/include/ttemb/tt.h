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

#ifndef TTEMB_TT_H_
#define TTEMB_TT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ttemb/svd.h"
#include "ttemb/tensor.h"

namespace ttemb {

// One embedding vector in tensor-train (MPS) form. Core k has shape
// (ranks[k], shape[k], ranks[k+1]) and ranks.front() == ranks.back() == 1.
struct TTVector {
  Shape shape;
  std::vector<std::size_t> ranks;
  std::vector<Tensor> cores;

  std::size_t order() const { return shape.size(); }
  std::size_t source_dim() const { return shape_product(shape); }

  // Throws ShapeMismatch on any broken structural invariant.
  void validate() const;
};

struct CompressSpec {
  Shape shape;
  // Upper bounds on the interior ranks r_1..r_{N-1}. Empty means no cap
  // beyond the structural maximum.
  std::vector<std::size_t> max_ranks;
  double epsilon = 0.0;

  void validate() const;
};

// Largest rank the sequential SVDs can produce between modes k and
// k+1 (k is 0-based, 0 <= k < N-1): min(prod_{j<=k} I_j, prod_{j>k} I_j).
std::size_t structural_max_rank(std::span<const std::size_t> shape,
                                std::size_t k);
std::vector<std::size_t> structural_max_ranks(std::span<const std::size_t> shape);

// Same cap r for every interior position.
std::vector<std::size_t> uniform_caps(std::size_t order, std::size_t r);

// Tensor-train SVD of a single vector with per-step truncation budget
// delta = epsilon / sqrt(N - 1) * |x|. When no cap binds the result satisfies
// |x - reconstruct(tt)| <= epsilon * |x|. N == 1 returns one (1, d, 1) core
// holding x; the zero vector returns all-zero cores of rank 1.
TTVector tt_svd(std::span<const double> x, const CompressSpec& spec,
                const SvdOptions& options = {});

// Contracts the cores left to right and writes the d entries into `out`.
void reconstruct_into(const TTVector& tt, std::span<double> out);
std::vector<double> reconstruct(const TTVector& tt);

// sum_k r_{k-1} I_k r_k
std::uint64_t param_count(const TTVector& tt);
std::uint64_t param_count(std::span<const std::size_t> shape,
                          std::span<const std::size_t> ranks);

// d / param_count - 1
double compression_ratio_tt(std::size_t d, const TTVector& tt);

// Multiply-adds of the left-to-right contraction chain, counted as 2 flops
// each: sum_{k>=2} 2 * (prod_{j<k} I_j) * r_{k-1} * I_k * r_k.
std::uint64_t reconstruction_flops(const TTVector& tt);
std::uint64_t reconstruction_flops(std::span<const std::size_t> shape,
                                   std::span<const std::size_t> ranks);

// Number of serial matrix products in the chain, N - 1.
std::size_t contraction_chain_length(const TTVector& tt);

}  // namespace ttemb

#endif  // TTEMB_TT_H_
