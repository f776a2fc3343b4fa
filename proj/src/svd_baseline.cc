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

#include "ttemb/svd_baseline.h"

#include <algorithm>

#include "ttemb/error.h"

namespace ttemb {

LowRankTable LowRankTable::compress(const Matrix& table, std::size_t k,
                                    const SvdOptions& options) {
  if (k == 0 || k > std::min(table.rows, table.cols)) {
    throw Error(ErrorCode::kRankOutOfRange,
                "rank " + std::to_string(k) + " outside [1, " +
                    std::to_string(std::min(table.rows, table.cols)) + "]");
  }
  const Svd svd = jacobi_svd(table, options);
  LowRankTable out;
  out.row_factors_ = Matrix(table.rows, k);
  out.col_factors_ = Matrix(k, table.cols);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t i = 0; i < table.rows; ++i) out.row_factors_(i, a) = svd.u(i, a);
    for (std::size_t j = 0; j < table.cols; ++j)
      out.col_factors_(a, j) = svd.s[a] * svd.v(j, a);
  }
  return out;
}

std::vector<double> LowRankTable::lookup_row(std::size_t i) const {
  if (i >= vocab_size()) {
    throw Error(ErrorCode::kTokenOutOfRange,
                "row " + std::to_string(i) + " of " + std::to_string(vocab_size()));
  }
  std::vector<double> row(dim(), 0.0);
  for (std::size_t j = 0; j < dim(); ++j) {
    double acc = 0.0;
    for (std::size_t a = 0; a < rank(); ++a) acc += row_factors_(i, a) * col_factors_(a, j);
    row[j] = acc;
  }
  return row;
}

std::string LowRankTable::describe() const {
  return "lrt1.V=" + std::to_string(vocab_size()) + "\nlrt1.d=" + std::to_string(dim()) +
         "\nlrt1.k=" + std::to_string(rank()) + "\nlrt1.params=" +
         std::to_string(param_count()) + "\nlrt1.row_flops=" + std::to_string(row_flops()) +
         "\n";
}

}  // namespace ttemb
