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

#ifndef TTEMB_BENCH_H_
#define TTEMB_BENCH_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ttemb/svd_baseline.h"
#include "ttemb/tensor.h"
#include "ttemb/tt.h"
#include "ttemb/vocab_store.h"

namespace ttemb {

inline constexpr std::size_t kDefaultBenchReps = 30;
// Single-text protocol: 50 tokens per text.
inline constexpr std::size_t kDefaultTextLength = 50;

struct BenchResult {
  std::string op;
  std::size_t tokens = 0;  // tokens processed per repetition
  std::size_t reps = 0;
  // ms/token for compress/reconstruct/svd_lookup, s/text for lookup_text.
  double mean = 0.0;
  double stddev = 0.0;
  double median_of_means = 0.0;
  double flops_per_token = 0.0;
  std::string shape;  // "8x8x12"
  std::string ranks;  // per-position maximum over measured tokens, "1:4:4:1"
  double eps = 0.0;
  std::size_t d = 0;
  std::size_t vocab = 0;
  std::size_t length = 0;
};

struct SampleStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for a single sample
  double median_of_means = 0.0;
};
SampleStats summarize(std::span<const double> samples);

struct BenchOptions {
  std::size_t reps = kDefaultBenchReps;
  std::size_t warmup = 2;
  std::size_t threads = 1;  // compression workers
};

// Times compressing every row of `table` (V x d).
BenchResult bench_compress(const Matrix& table, const CompressSpec& spec,
                           const BenchOptions& opt = {});
// Times reconstructing `ids` one by one.
BenchResult bench_reconstruct(const CompressedVocab& vocab, std::span<const TokenId> ids,
                              const BenchOptions& opt = {});
// Times one batch lookup of `length` seeded token ids (a single text).
BenchResult bench_lookup_text(const CompressedVocab& vocab, std::size_t length,
                              std::uint64_t seed, const BenchOptions& opt = {});
// Times row lookups from the matrix-SVD baseline.
BenchResult bench_svd_lookup(const LowRankTable& table, std::span<const TokenId> ids,
                             const BenchOptions& opt = {});

// Deterministic token selection used by the lookup benchmark.
std::vector<TokenId> pick_tokens(const CompressedVocab& vocab, std::size_t count,
                                 std::uint64_t seed);

// Column layout: op,shape,ranks,eps,d,V,l,reps,mean,std,flops_per_token
std::string bench_csv_header();
std::string bench_csv_row(const BenchResult& r);
// Published host/edge latencies, as '#' comment lines for context only.
std::string bench_reference_notes();

}  // namespace ttemb

#endif  // TTEMB_BENCH_H_
