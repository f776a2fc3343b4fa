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

#include "ttemb/metrics.h"

#include <cmath>
#include <string>

#include "ttemb/error.h"

namespace ttemb {

namespace {

void require_nonempty(const LogProbSequence& s) {
  if (s.values.empty()) throw Error(ErrorCode::kEmptySequence, "no log-probabilities");
}

double sum(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc;
}

}  // namespace

LogProbSequence read_log_probs(std::istream& in) {
  LogProbSequence out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(line.substr(first), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    const auto rest = line.find_first_not_of(" \t\r", first + used);
    if (used == 0 || rest != std::string::npos || !std::isfinite(v) || v > 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "line " + std::to_string(line_no) + ": not a log-probability: '" + line + "'");
    }
    out.values.push_back(v);
  }
  return out;
}

double ln_perplexity(const LogProbSequence& s) {
  require_nonempty(s);
  return -sum(s.values);
}

double perplexity(const LogProbSequence& s) { return std::exp(ln_perplexity(s)); }

double ln_perplexity_normalized(const LogProbSequence& s) {
  require_nonempty(s);
  return -sum(s.values) / static_cast<double>(s.values.size());
}

double perplexity_normalized(const LogProbSequence& s) {
  return std::exp(ln_perplexity_normalized(s));
}

double delta_ln_ppl(const LogProbSequence& before, const LogProbSequence& after) {
  if (before.values.size() != after.values.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(before.values.size()) + " vs " +
                    std::to_string(after.values.size()) + " tokens");
  }
  return ln_perplexity(after) - ln_perplexity(before);
}

CompressionRatios compression_ratios(std::uint64_t orig_params, std::uint64_t cmpr_params) {
  if (orig_params == 0 || cmpr_params > orig_params) {
    throw Error(ErrorCode::kInvalidArgument, "need orig > 0 and orig >= cmpr");
  }
  if (cmpr_params == 0) {
    throw Error(ErrorCode::kDivisionByZero, "compressed parameter count is 0");
  }
  const double orig = static_cast<double>(orig_params);
  const double cmpr = static_cast<double>(cmpr_params);
  return {(orig - cmpr) / cmpr, (orig - cmpr) / orig};
}

double tradeoff_score(double delta_log_ppl, double eta_emb) {
  if (eta_emb == 0.0) throw Error(ErrorCode::kDivisionByZero, "eta_emb is 0");
  if (!(eta_emb > 0.0)) throw Error(ErrorCode::kInvalidArgument, "eta_emb must be > 0");
  return delta_log_ppl / eta_emb;
}

double tradeoff_score(const LogProbSequence& before, const LogProbSequence& after,
                      double eta_emb, double log_base) {
  return tradeoff_score(delta_ln_ppl(before, after) / std::log(log_base), eta_emb);
}

}  // namespace ttemb
