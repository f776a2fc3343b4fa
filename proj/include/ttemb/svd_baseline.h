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

#ifndef TTEMB_SVD_BASELINE_H_
#define TTEMB_SVD_BASELINE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ttemb/svd.h"
#include "ttemb/tensor.h"

namespace ttemb {

// Whole-table rank-k factorization, table ~= row_factors * col_factors with
// the singular values folded into col_factors. There is no way to add a row;
// a new token means refactorizing the table.
class LowRankTable {
 public:
  // table is V x d. RankOutOfRange unless 1 <= k <= min(V, d).
  static LowRankTable compress(const Matrix& table, std::size_t k,
                               const SvdOptions& options = {});

  std::size_t vocab_size() const { return row_factors_.rows; }
  std::size_t dim() const { return col_factors_.cols; }
  std::size_t rank() const { return row_factors_.cols; }
  const Matrix& row_factors() const { return row_factors_; }
  const Matrix& col_factors() const { return col_factors_; }

  // TokenOutOfRange when i >= V.
  std::vector<double> lookup_row(std::size_t i) const;

  Matrix dense() const { return multiply(row_factors_, col_factors_); }

  std::uint64_t param_count() const {
    return static_cast<std::uint64_t>(rank()) * (vocab_size() + dim());
  }
  // 2 d k - d: k products and k - 1 additions per output entry.
  std::uint64_t row_flops() const {
    return 2ull * dim() * rank() - dim();
  }

  // key=value lines prefixed "lrt1." describing the factorization.
  std::string describe() const;

 private:
  Matrix row_factors_;  // V x k
  Matrix col_factors_;  // k x d
};

}  // namespace ttemb

#endif  // TTEMB_SVD_BASELINE_H_
