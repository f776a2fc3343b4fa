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

#include "ttemb/shape_planner.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.h"
#include "ttemb/error.h"

namespace ttemb {
namespace {

bool contains(const std::vector<Shape>& v, const Shape& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

TEST(Factorizations, SixteenUpToOrderFour) {
  const auto f = enumerate_factorizations(16, 4);
  for (const Shape& s : std::vector<Shape>{{16}, {2, 8}, {8, 2}, {4, 4}, {2, 2, 4},
                                           {2, 4, 2}, {4, 2, 2}, {2, 2, 2, 2}}) {
    EXPECT_TRUE(contains(f, s)) << format_shape(s);
  }
  EXPECT_TRUE(std::is_sorted(f.begin(), f.end()));
}

TEST(Factorizations, PrimeHasOnlyItself) {
  EXPECT_EQ(enumerate_factorizations(13, 8), (std::vector<Shape>{{13}}));
}

TEST(Factorizations, TwentySevenHasNoTwos) {
  const auto f = enumerate_factorizations(27, 8);
  EXPECT_TRUE(contains(f, {3, 3, 3}));
  for (const Shape& s : f) EXPECT_EQ(std::count(s.begin(), s.end(), 2u), 0);
}

TEST(Factorizations, MatchesIndependentRecursion) {
  for (std::size_t d : {12u, 36u, 64u, 96u, 210u}) {
    auto ref = oracle::factorizations(d);
    std::sort(ref.begin(), ref.end());
    EXPECT_EQ(enumerate_factorizations(d, 64), ref) << d;
  }
}

TEST(Factorizations, OrderLimitIsRespected) {
  for (const Shape& s : enumerate_factorizations(256, 3)) EXPECT_LE(s.size(), 3u);
}

TEST(Storage, TwentySevenUniqueMinimum) {
  const auto best = optimal_shapes(27, 1);
  EXPECT_EQ(best, (std::vector<Shape>{{3, 3, 3}}));
  EXPECT_EQ(storage_for_uniform(Shape{3, 3, 3}, 1), 9u);
}

TEST(Storage, SixteenTies) {
  const auto best = optimal_shapes(16, 1);
  for (const Shape& s : best) EXPECT_EQ(storage_for_uniform(s, 1), 8u);
  for (const Shape& s : std::vector<Shape>{{2, 2, 2, 2}, {2, 2, 4}, {2, 4, 2}, {4, 2, 2}, {4, 4}}) {
    EXPECT_TRUE(contains(best, s)) << format_shape(s);
  }
  // every factorization with factor sum 8 and nothing else
  for (const Shape& s : oracle::factorizations(16)) {
    std::size_t sum = 0;
    for (auto f : s) sum += f;
    EXPECT_EQ(contains(best, s), sum == 8) << format_shape(s);
  }
}

TEST(Storage, FourTie) {
  const auto best = optimal_shapes(4, 1);
  EXPECT_TRUE(contains(best, {2, 2}));
  EXPECT_TRUE(contains(best, {4}));
}

TEST(Storage, MatchesDirectCount) {
  for (std::size_t d : {24u, 64u, 90u}) {
    for (std::size_t r : {1u, 2u, 3u, 7u}) {
      for (const Shape& s : oracle::factorizations(d)) {
        EXPECT_EQ(storage_for_uniform(s, r), oracle::storage(s, r)) << format_shape(s) << " r=" << r;
      }
    }
  }
}

TEST(Storage, StructuralClipping) {
  // (2,8): the only interior rank is at most 2 whatever the cap.
  EXPECT_EQ(storage_for(Shape{2, 8}, std::vector<std::size_t>{5}), 2u * 2 + 2 * 8);
}

TEST(Storage, PrimeFactorizationInArgminAtRankOne) {
  for (std::size_t d : {8u, 16u, 27u, 64u, 128u, 729u}) {
    EXPECT_TRUE(contains(optimal_shapes(d, 1), prime_factors(d))) << d;
  }
}

TEST(Storage, UniformClosedFormAgreesWithEnumeration) {
  for (std::size_t d : {16u, 64u, 81u, 256u, 729u, 4096u}) {
    for (std::size_t r : {1u, 2u, 3u}) {
      EXPECT_EQ(optimal_uniform_shapes_closed_form(d, r), optimal_uniform_shapes_enumerated(d, r))
          << d << " r=" << r;
    }
  }
  EXPECT_EQ(uniform_storage_closed_form(3, 3, 1), 9u);
  EXPECT_EQ(uniform_storage_closed_form(5, 1, 4), 5u);
  EXPECT_EQ(uniform_storage_closed_form(4, 4, 2), 2u * 4 * (2 + 2 * 2));
}

TEST(Plan, MaxCompression768) {
  const ShapePlan p = plan(768, ShapePolicy::max_compression(), 1, 0.1);
  EXPECT_EQ(p.shape, (Shape{2, 2, 2, 2, 2, 2, 2, 2, 3}));
  EXPECT_EQ(p.predicted_params, 2u * 8 + 3);
}

TEST(Plan, TargetOrderThree768) {
  const ShapePlan p = plan(768, ShapePolicy::target_order(3), 4, 0.0);
  EXPECT_EQ(p.shape, (Shape{8, 8, 12}));
  EXPECT_EQ(p.predicted_params, 208u);
  EXPECT_NEAR(p.predicted_eta, 768.0 / 208 - 1, 1e-12);
  EXPECT_EQ(p.rank_caps, (std::vector<std::size_t>{4, 4}));
}

TEST(Plan, TargetOrderTieBreakIsLexicographic) {
  // 12 = 2*6 = 3*4 = 4*3; the smallest max factor is 4, (3,4) wins over (4,3)
  EXPECT_EQ(plan(12, ShapePolicy::target_order(2), 1, 0).shape, (Shape{3, 4}));
}

TEST(Plan, DimensionOne) {
  for (const ShapePolicy& pol : {ShapePolicy::max_compression(), ShapePolicy::target_order(3)}) {
    EXPECT_EQ(plan(1, pol, 1, 0).shape, (Shape{1}));
  }
}

TEST(Plan, Errors) {
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIo;
  };
  EXPECT_EQ(code([] { plan(13, ShapePolicy::target_order(2), 1, 0); }), ErrorCode::kInfeasibleOrder);
  EXPECT_EQ(code([] { plan(12, ShapePolicy::explicit_shape({2, 5}), 1, 0); }), ErrorCode::kShapeMismatch);
  EXPECT_EQ(code([] { plan(12, ShapePolicy::max_compression(), 0, 0); }), ErrorCode::kRankOutOfRange);
}

TEST(Plan, ParsePolicy) {
  EXPECT_EQ(ShapePolicy::parse("max").kind, ShapePolicy::Kind::kMaxCompression);
  const ShapePolicy o = ShapePolicy::parse("order:3");
  EXPECT_EQ(o.kind, ShapePolicy::Kind::kTargetOrder);
  EXPECT_EQ(o.order, 3u);
  const ShapePolicy e = ShapePolicy::parse("8,8,12");
  EXPECT_EQ(e.kind, ShapePolicy::Kind::kExplicit);
  EXPECT_EQ(e.shape, (Shape{8, 8, 12}));
  EXPECT_THROW(ShapePolicy::parse("order:x"), Error);
  EXPECT_THROW(parse_shape("8,,12"), Error);
  EXPECT_EQ(format_shape(Shape{8, 8, 12}, 'x'), "8x8x12");
}

TEST(Plan, PrimeFactors) {
  EXPECT_EQ(prime_factors(768), (std::vector<std::size_t>{2, 2, 2, 2, 2, 2, 2, 2, 3}));
  EXPECT_EQ(prime_factors(97), (std::vector<std::size_t>{97}));
}

}  // namespace
}  // namespace ttemb
