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

#ifndef TTEMB_METRICS_H_
#define TTEMB_METRICS_H_

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <vector>

namespace ttemb {

// Per-token natural-log probabilities ln p(x_i | x_<i), each finite and <= 0.
struct LogProbSequence {
  std::vector<double> values;
};

// Reads one decimal value per line; blank lines are skipped. Throws
// InvalidArgument for unparsable, non-finite or positive values.
LogProbSequence read_log_probs(std::istream& in);

// -sum(values). Verbatim: no 1/|S| normalization. EmptySequence when empty.
double ln_perplexity(const LogProbSequence& s);
double perplexity(const LogProbSequence& s);
// Per-token normalized variants: -mean(values) and its exponential.
double ln_perplexity_normalized(const LogProbSequence& s);
double perplexity_normalized(const LogProbSequence& s);

// ln PPL(after) - ln PPL(before) = sum_i ln(p_before / p_after).
// LengthMismatch when the sequences differ in length.
double delta_ln_ppl(const LogProbSequence& before, const LogProbSequence& after);

struct CompressionRatios {
  double eta = 0.0;        // (orig - cmpr) / cmpr
  double reduction = 0.0;  // (orig - cmpr) / orig, reported as eta_emb and phi
};

// InvalidArgument unless orig > 0 and orig >= cmpr; DivisionByZero when
// cmpr == 0.
CompressionRatios compression_ratios(std::uint64_t orig_params, std::uint64_t cmpr_params);

// delta / eta_emb, lower is better. DivisionByZero when eta_emb == 0.
double tradeoff_score(double delta_log_ppl, double eta_emb);
// Same score from two log-prob sequences, with the perplexity change
// expressed in the given log base (10 by default).
double tradeoff_score(const LogProbSequence& before, const LogProbSequence& after,
                      double eta_emb, double log_base = 10.0);

}  // namespace ttemb

#endif  // TTEMB_METRICS_H_
