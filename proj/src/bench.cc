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

#include "ttemb/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "ttemb/error.h"
#include "ttemb/format.h"
#include "ttemb/shape_planner.h"

namespace ttemb {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <typename Fn>
std::vector<double> time_reps(const BenchOptions& opt, Fn&& fn) {
  if (opt.reps == 0) throw Error(ErrorCode::kInvalidArgument, "reps must be >= 1");
  for (std::size_t i = 0; i < opt.warmup; ++i) fn();
  std::vector<double> samples;
  samples.reserve(opt.reps);
  for (std::size_t i = 0; i < opt.reps; ++i) {
    const auto start = Clock::now();
    fn();
    samples.push_back(elapsed_ms(start));
  }
  return samples;
}

void fill_stats(BenchResult& r, std::vector<double> samples, double scale) {
  for (double& s : samples) s *= scale;
  const SampleStats st = summarize(samples);
  r.reps = samples.size();
  r.mean = st.mean;
  r.stddev = st.stddev;
  r.median_of_means = st.median_of_means;
}

std::string max_ranks_of(const CompressedVocab& vocab, std::span<const TokenId> ids) {
  std::vector<std::size_t> ranks(vocab.shape().size() + 1, 1);
  for (TokenId id : ids) {
    const auto& r = vocab.entry(id).ranks;
    for (std::size_t k = 0; k < r.size(); ++k) ranks[k] = std::max(ranks[k], r[k]);
  }
  return format_shape(ranks, ':');
}

double mean_flops(const CompressedVocab& vocab, std::span<const TokenId> ids) {
  if (ids.empty()) return 0.0;
  std::uint64_t total = 0;
  for (TokenId id : ids) total += reconstruction_flops(vocab.entry(id));
  return static_cast<double>(total) / static_cast<double>(ids.size());
}

BenchResult describe(const std::string& op, const CompressedVocab& vocab,
                     std::span<const TokenId> ids) {
  BenchResult r;
  r.op = op;
  r.tokens = ids.size();
  r.shape = format_shape(vocab.shape(), 'x');
  r.ranks = max_ranks_of(vocab, ids);
  r.eps = vocab.epsilon();
  r.d = vocab.dim();
  r.vocab = vocab.size();
  r.flops_per_token = mean_flops(vocab, ids);
  return r;
}

}  // namespace

SampleStats summarize(std::span<const double> samples) {
  SampleStats st;
  const std::size_t n = samples.size();
  if (n == 0) return st;
  st.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double s : samples) ss += (s - st.mean) * (s - st.mean);
    st.stddev = std::sqrt(ss / static_cast<double>(n - 1));
  }
  // Median of the means of up to 5 consecutive groups.
  const std::size_t groups = std::min<std::size_t>(5, n);
  std::vector<double> means;
  for (std::size_t g = 0; g < groups; ++g) {
    const std::size_t begin = g * n / groups;
    const std::size_t end = (g + 1) * n / groups;
    means.push_back(std::accumulate(samples.begin() + begin, samples.begin() + end, 0.0) /
                    static_cast<double>(end - begin));
  }
  std::sort(means.begin(), means.end());
  st.median_of_means = means.size() % 2 ? means[means.size() / 2]
                                        : 0.5 * (means[means.size() / 2 - 1] + means[means.size() / 2]);
  return st;
}

BenchResult bench_compress(const Matrix& table, const CompressSpec& spec,
                           const BenchOptions& opt) {
  CompressedVocab last(spec);
  auto samples = time_reps(opt, [&] { last = CompressedVocab::build(table, spec, opt.threads); });
  const auto ids = last.ids();
  BenchResult r = describe(opt.threads > 1 ? "compress_parallel" : "compress", last, ids);
  fill_stats(r, std::move(samples), table.rows ? 1.0 / static_cast<double>(table.rows) : 0.0);
  return r;
}

BenchResult bench_reconstruct(const CompressedVocab& vocab, std::span<const TokenId> ids,
                              const BenchOptions& opt) {
  std::vector<double> out(vocab.dim());
  double sink = 0.0;
  auto samples = time_reps(opt, [&] {
    for (TokenId id : ids) {
      vocab.lookup_into(id, out);
      sink += out[0];
    }
  });
  BenchResult r = describe("reconstruct", vocab, ids);
  fill_stats(r, std::move(samples), ids.empty() ? 0.0 : 1.0 / static_cast<double>(ids.size()));
  if (std::isnan(sink)) r.op += "_nan";
  return r;
}

std::vector<TokenId> pick_tokens(const CompressedVocab& vocab, std::size_t count,
                                 std::uint64_t seed) {
  const auto all = vocab.ids();
  if (all.empty()) throw Error(ErrorCode::kTokenNotFound, "empty vocabulary");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  std::vector<TokenId> out(count);
  for (auto& id : out) id = all[pick(rng)];
  return out;
}

BenchResult bench_lookup_text(const CompressedVocab& vocab, std::size_t length,
                              std::uint64_t seed, const BenchOptions& opt) {
  const auto ids = pick_tokens(vocab, length, seed);
  double sink = 0.0;
  auto samples = time_reps(opt, [&] {
    const auto rows = vocab.lookup_batch(ids);
    sink += rows.empty() ? 0.0 : rows.back();
  });
  BenchResult r = describe("lookup_text", vocab, ids);
  r.length = length;
  fill_stats(r, std::move(samples), 1e-3);  // ms -> s per text
  if (std::isnan(sink)) r.op += "_nan";
  return r;
}

BenchResult bench_svd_lookup(const LowRankTable& table, std::span<const TokenId> ids,
                             const BenchOptions& opt) {
  double sink = 0.0;
  auto samples = time_reps(opt, [&] {
    for (TokenId id : ids) sink += table.lookup_row(id)[0];
  });
  BenchResult r;
  r.op = "svd_lookup";
  r.tokens = ids.size();
  r.shape = std::to_string(table.dim());
  r.ranks = std::to_string(table.rank());
  r.d = table.dim();
  r.vocab = table.vocab_size();
  r.flops_per_token = static_cast<double>(table.row_flops());
  fill_stats(r, std::move(samples), ids.empty() ? 0.0 : 1.0 / static_cast<double>(ids.size()));
  if (std::isnan(sink)) r.op += "_nan";
  return r;
}

std::string bench_csv_header() { return "op,shape,ranks,eps,d,V,l,reps,mean,std,flops_per_token"; }

std::string bench_csv_row(const BenchResult& r) {
  const double f = r.flops_per_token;
  const std::string flops = f == std::floor(f) ? std::to_string(static_cast<std::uint64_t>(f))
                                               : format_number(f);
  return r.op + "," + r.shape + "," + r.ranks + "," + format_number(r.eps) + "," +
         std::to_string(r.d) + "," + std::to_string(r.vocab) + "," + std::to_string(r.length) +
         "," + std::to_string(r.reps) + "," + format_number(r.mean) + "," +
         format_number(r.stddev) + "," + flops;
}

std::string bench_reference_notes() {
  return "# reference only, not comparable with host numbers above\n"
         "# published ms/token, d=768: compress server 0.627-1.429, Raspberry Pi 5 "
         "0.760-1.948; reconstruct server 0.117-0.238, Raspberry Pi 5 0.330-0.468\n"
         "# published s/text (50 tokens), GPT-2 on Raspberry Pi 5: original 0.50, "
         "compressed 0.50-0.71\n";
}

}  // namespace ttemb
