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

#include <algorithm>
#include <limits>
#include <sstream>

#include "ttemb/error.h"

namespace ttemb {

namespace {

void extend(std::size_t remaining, std::size_t max_order, Shape& prefix,
            std::vector<Shape>& out) {
  if (remaining == 1) {
    out.push_back(prefix);
    return;
  }
  if (prefix.size() == max_order) return;
  for (std::size_t f = 2; f <= remaining; ++f) {
    if (remaining % f != 0) continue;
    prefix.push_back(f);
    extend(remaining / f, max_order, prefix, out);
    prefix.pop_back();
  }
}

std::vector<Shape> argmin_storage(const std::vector<Shape>& shapes, std::size_t r) {
  std::vector<Shape> best;
  std::uint64_t best_cost = std::numeric_limits<std::uint64_t>::max();
  for (const Shape& s : shapes) {
    const std::uint64_t c = storage_for_uniform(s, r);
    if (c < best_cost) {
      best_cost = c;
      best.clear();
    }
    if (c == best_cost) best.push_back(s);
  }
  return best;
}

bool is_uniform(const Shape& s) {
  return std::all_of(s.begin(), s.end(), [&](std::size_t v) { return v == s[0]; });
}

}  // namespace

std::vector<Shape> enumerate_factorizations(std::size_t d, std::size_t max_order) {
  std::vector<Shape> out;
  if (d < 2 || max_order == 0) return out;
  Shape prefix;
  extend(d, max_order, prefix, out);
  // The recursion emits prefixes in increasing first factor, which is already
  // lexicographic; the sort pins it regardless.
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t storage_for(std::span<const std::size_t> shape,
                          std::span<const std::size_t> interior_ranks) {
  std::vector<std::size_t> ranks{1};
  for (std::size_t k = 0; k + 1 < shape.size(); ++k)
    ranks.push_back(std::min(interior_ranks[k], structural_max_rank(shape, k)));
  ranks.push_back(1);
  return param_count(shape, ranks);
}

std::uint64_t storage_for_uniform(std::span<const std::size_t> shape, std::size_t r) {
  const auto caps = uniform_caps(shape.size(), r);
  return storage_for(shape, caps);
}

std::vector<Shape> optimal_shapes(std::size_t d, std::size_t r) {
  if (d == 1) return {Shape{1}};
  return argmin_storage(enumerate_factorizations(d, kDefaultMaxOrder), r);
}

std::uint64_t uniform_storage_closed_form(std::size_t mode_size, std::size_t order,
                                          std::size_t r) {
  if (order == 1) return mode_size;
  return static_cast<std::uint64_t>(r) * mode_size * (2 + (order - 2) * r);
}

std::vector<Shape> optimal_uniform_shapes_closed_form(std::size_t d, std::size_t r) {
  std::vector<Shape> best;
  std::uint64_t best_cost = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t mode_size = 2; mode_size <= d; ++mode_size) {
    std::size_t power = 1;
    for (std::size_t order = 1; order <= kDefaultMaxOrder; ++order) {
      power *= mode_size;
      if (power > d) break;
      if (power != d) continue;
      const std::uint64_t c = uniform_storage_closed_form(mode_size, order, r);
      if (c < best_cost) {
        best_cost = c;
        best.clear();
      }
      if (c == best_cost) best.push_back(Shape(order, mode_size));
    }
  }
  std::sort(best.begin(), best.end());
  return best;
}

std::vector<Shape> optimal_uniform_shapes_enumerated(std::size_t d, std::size_t r) {
  std::vector<Shape> uniform;
  for (Shape& s : enumerate_factorizations(d, kDefaultMaxOrder))
    if (is_uniform(s)) uniform.push_back(std::move(s));
  return argmin_storage(uniform, r);
}

std::vector<std::size_t> prime_factors(std::size_t d) {
  std::vector<std::size_t> out;
  for (std::size_t p = 2; p * p <= d; ++p) {
    while (d % p == 0) {
      out.push_back(p);
      d /= p;
    }
  }
  if (d > 1) out.push_back(d);
  return out;
}

ShapePolicy ShapePolicy::parse(const std::string& text) {
  if (text == "max") return max_compression();
  if (text.rfind("order:", 0) == 0) {
    const std::string n = text.substr(6);
    if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, "bad target order '" + n + "'");
    }
    return target_order(std::stoul(n));
  }
  if (text.rfind("explicit:", 0) == 0) return explicit_shape(parse_shape(text.substr(9)));
  return explicit_shape(parse_shape(text));
}

ShapePlan plan(std::size_t d, const ShapePolicy& policy, std::size_t rank_cap,
               double epsilon) {
  if (d == 0) throw Error(ErrorCode::kShapeMismatch, "dimension must be >= 1");
  if (rank_cap == 0) throw Error(ErrorCode::kRankOutOfRange, "rank cap must be >= 1");
  ShapePlan out;
  out.epsilon = epsilon;
  if (d == 1) {
    out.shape = {1};
  } else {
    switch (policy.kind) {
      case ShapePolicy::Kind::kMaxCompression:
        out.shape = prime_factors(d);
        break;
      case ShapePolicy::Kind::kTargetOrder: {
        if (policy.order == 0) {
          throw Error(ErrorCode::kInfeasibleOrder, "order must be >= 1");
        }
        std::size_t best_max = std::numeric_limits<std::size_t>::max();
        for (const Shape& s : enumerate_factorizations(d, policy.order)) {
          if (s.size() != policy.order) continue;
          const std::size_t m = *std::max_element(s.begin(), s.end());
          // Lexicographic enumeration order makes the first hit the tie-break.
          if (m < best_max) {
            best_max = m;
            out.shape = s;
          }
        }
        if (out.shape.empty()) {
          throw Error(ErrorCode::kInfeasibleOrder,
                      std::to_string(d) + " has no factorization of length " +
                          std::to_string(policy.order));
        }
        break;
      }
      case ShapePolicy::Kind::kExplicit:
        if (policy.shape.empty() || shape_product(policy.shape) != d ||
            std::find(policy.shape.begin(), policy.shape.end(), 0) != policy.shape.end()) {
          throw Error(ErrorCode::kShapeMismatch,
                      "shape " + format_shape(policy.shape) + " does not multiply to " +
                          std::to_string(d));
        }
        out.shape = policy.shape;
        break;
    }
  }
  for (std::size_t k = 0; k + 1 < out.shape.size(); ++k)
    out.rank_caps.push_back(std::min(rank_cap, structural_max_rank(out.shape, k)));
  out.predicted_params = storage_for(out.shape, out.rank_caps);
  out.predicted_eta =
      static_cast<double>(d) / static_cast<double>(out.predicted_params) - 1.0;
  return out;
}

std::string format_shape(std::span<const std::size_t> shape, char sep) {
  std::string s;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (k) s += sep;
    s += std::to_string(shape[k]);
  }
  return s;
}

Shape parse_shape(const std::string& text) {
  Shape out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, "bad shape '" + text + "'");
    }
    out.push_back(std::stoul(item));
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "empty shape");
  return out;
}

}  // namespace ttemb
