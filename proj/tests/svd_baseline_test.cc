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

#include <gtest/gtest.h>

#include <random>

#include "oracles.h"
#include "ttemb/error.h"

namespace ttemb {
namespace {

double frob_diff(const Matrix& a, const Matrix& b) {
  std::vector<double> d(a.data.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.data[i] - b.data[i];
  return frobenius_norm(d);
}

TEST(LowRankTable, ExactRankTwo) {
  std::mt19937_64 rng(1);
  const Matrix t = multiply(oracle::random_matrix(7, 2, rng), oracle::random_matrix(2, 5, rng));
  const LowRankTable lrt = LowRankTable::compress(t, 2);
  EXPECT_LT(frob_diff(lrt.dense(), t), 1e-9);
}

TEST(LowRankTable, ErrorIsTheSpectralTail) {
  std::mt19937_64 rng(2);
  const Matrix t = oracle::random_matrix(8, 6, rng);
  const auto s = oracle::singular_values(t);
  const LowRankTable lrt = LowRankTable::compress(t, 3);
  EXPECT_NEAR(frob_diff(lrt.dense(), t), static_cast<double>(oracle::tail_norm(s, 3)), 1e-12);
}

TEST(LowRankTable, FullRankIsLossless) {
  std::mt19937_64 rng(3);
  const Matrix t = oracle::random_matrix(5, 4, rng);
  const LowRankTable lrt = LowRankTable::compress(t, 4);
  for (std::size_t i = 0; i < 5; ++i) {
    const auto row = lrt.lookup_row(i);
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(row[j], t(i, j), 1e-9);
  }
}

TEST(LowRankTable, ZeroTable) {
  const LowRankTable lrt = LowRankTable::compress(Matrix(4, 3), 2);
  EXPECT_EQ(lrt.lookup_row(2), std::vector<double>(3, 0.0));
}

TEST(LowRankTable, LookupMatchesDense) {
  std::mt19937_64 rng(4);
  const LowRankTable lrt = LowRankTable::compress(oracle::random_matrix(8, 6, rng), 3);
  const Matrix dense = lrt.dense();
  const auto row = lrt.lookup_row(5);
  for (std::size_t j = 0; j < 6; ++j) EXPECT_NEAR(row[j], dense(5, j), 1e-14);
}

TEST(LowRankTable, Accounting) {
  std::mt19937_64 rng(5);
  const LowRankTable lrt = LowRankTable::compress(oracle::random_matrix(10, 6, rng), 3);
  EXPECT_EQ(lrt.param_count(), 3u * (10 + 6));
  EXPECT_EQ(lrt.row_flops(), 2u * 6 * 3 - 6);
  EXPECT_NE(lrt.describe().find("lrt1.k=3"), std::string::npos);
}

TEST(LowRankTable, Errors) {
  const Matrix t = Matrix::identity(3);
  EXPECT_THROW(LowRankTable::compress(t, 0), Error);
  EXPECT_THROW(LowRankTable::compress(t, 4), Error);
  try {
    LowRankTable::compress(t, 1).lookup_row(3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTokenOutOfRange);
  }
}

}  // namespace
}  // namespace ttemb
