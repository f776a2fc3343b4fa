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

#ifndef TTEMB_SHAPE_PLANNER_H_
#define TTEMB_SHAPE_PLANNER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ttemb/tensor.h"
#include "ttemb/tt.h"

namespace ttemb {

inline constexpr std::size_t kDefaultMaxOrder = 16;

struct ShapePlan {
  Shape shape;
  std::vector<std::size_t> rank_caps;  // interior caps after structural clipping
  std::uint64_t predicted_params = 0;
  double predicted_eta = 0.0;
  double epsilon = 0.0;

  CompressSpec to_compress_spec() const { return {shape, rank_caps, epsilon}; }
};

// All ordered factorizations of d into factors >= 2 with at most max_order
// factors, in lexicographic order. The trivial factorization (d) is included.
std::vector<Shape> enumerate_factorizations(std::size_t d, std::size_t max_order);

// Storage of a TT representation with boundary ranks 1 and the given interior
// ranks, each clipped to its structural maximum.
std::uint64_t storage_for(std::span<const std::size_t> shape,
                          std::span<const std::size_t> interior_ranks);
std::uint64_t storage_for_uniform(std::span<const std::size_t> shape, std::size_t r);

// Every factorization of d (up to kDefaultMaxOrder factors) attaining the
// minimal uniform-rank storage. Ties are all kept.
std::vector<Shape> optimal_shapes(std::size_t d, std::size_t r);

// r * I * (2 + (N - 2) * r): storage of the uniform shape (I, ..., I) of order
// N >= 2 when every interior rank is r. N == 1 gives I.
std::uint64_t uniform_storage_closed_form(std::size_t mode_size, std::size_t order,
                                          std::size_t r);

// Argmin over the uniform shapes I^N = d computed with the closed form alone.
std::vector<Shape> optimal_uniform_shapes_closed_form(std::size_t d, std::size_t r);

// Argmin over the uniform shapes I^N = d computed by enumeration and
// storage_for_uniform.
std::vector<Shape> optimal_uniform_shapes_enumerated(std::size_t d, std::size_t r);

// Prime factors of d in ascending order.
std::vector<std::size_t> prime_factors(std::size_t d);

struct ShapePolicy {
  enum class Kind { kMaxCompression, kTargetOrder, kExplicit };
  Kind kind = Kind::kMaxCompression;
  std::size_t order = 0;  // kTargetOrder
  Shape shape;            // kExplicit

  static ShapePolicy max_compression() { return {}; }
  static ShapePolicy target_order(std::size_t n) { return {Kind::kTargetOrder, n, {}}; }
  static ShapePolicy explicit_shape(Shape s) { return {Kind::kExplicit, 0, std::move(s)}; }

  // "max", "order:N" or a comma-separated shape such as "8,8,12".
  static ShapePolicy parse(const std::string& text);
};

// Builds a plan for dimension d. max-compression uses the ascending prime
// factorization, target-order the length-N factorization with the smallest
// largest factor (ties to the lexicographically smallest), explicit shapes
// are validated. d == 1 yields the trivial plan (1). Throws InfeasibleOrder
// when no factorization of the requested length exists.
ShapePlan plan(std::size_t d, const ShapePolicy& policy, std::size_t rank_cap,
               double epsilon);

std::string format_shape(std::span<const std::size_t> shape, char sep = ',');
Shape parse_shape(const std::string& text);

}  // namespace ttemb

#endif  // TTEMB_SHAPE_PLANNER_H_
