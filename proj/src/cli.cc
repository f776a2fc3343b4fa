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

#include "ttemb/cli.h"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ttemb/bench.h"
#include "ttemb/binary_io.h"
#include "ttemb/emb_file.h"
#include "ttemb/energy.h"
#include "ttemb/format.h"
#include "ttemb/metrics.h"
#include "ttemb/shape_planner.h"
#include "ttemb/svd_baseline.h"
#include "ttemb/tt.h"
#include "ttemb/vocab_store.h"

namespace ttemb {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return kExitUsage;
    case ErrorCode::kIo:
      return kExitIo;
    case ErrorCode::kCorruptFile:
    case ErrorCode::kVersionMismatch:
      return kExitFormat;
    default:
      return kExitNumeric;
  }
}

namespace {

std::string env_name(const std::string& flag) {
  std::string s = "TTEMB_";
  for (char c : flag) s += c == '-' ? '_' : static_cast<char>(std::toupper(c));
  return s;
}

// Registers an option with its TTEMB_ environment fallback.
template <typename T>
CLI::Option* opt(CLI::App* app, const std::string& flag, T& target, const std::string& help) {
  return app->add_option("--" + flag, target, help)
      ->envname(env_name(flag))
      ->capture_default_str();
}

std::vector<TokenId> parse_ids(const std::string& text) {
  std::vector<TokenId> ids;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, "bad token id list '" + text + "'");
    }
    ids.push_back(std::stoull(item));
  }
  return ids;
}

class Output {
 public:
  Output(std::ostream& out, bool pretty) : out_(out), pretty_(pretty) {}

  void kv(const std::string& key, const std::string& value) { rows_.emplace_back(key, value); }
  void kv(const std::string& key, double value) { kv(key, format_number(value)); }
  void kv(const std::string& key, std::uint64_t value) { kv(key, std::to_string(value)); }

  void flush() {
    std::size_t width = 0;
    for (const auto& [k, v] : rows_) width = std::max(width, k.size());
    for (const auto& [k, v] : rows_) {
      if (pretty_) {
        out_ << k << std::string(width - k.size() + 2, ' ') << v << "\n";
      } else {
        out_ << k << "=" << v << "\n";
      }
    }
    rows_.clear();
  }

 private:
  std::ostream& out_;
  bool pretty_;
  std::vector<std::pair<std::string, std::string>> rows_;
};

void report_store(Output& o, const CompressedVocab& v) {
  o.kv("V", static_cast<std::uint64_t>(v.size()));
  o.kv("d", static_cast<std::uint64_t>(v.dim()));
  o.kv("shape", format_shape(v.shape()));
  o.kv("eps", v.epsilon());
  o.kv("total_params", v.total_params());
  o.kv("dense_params", v.dense_params());
  o.kv("eta", v.eta());
  o.kv("eta_emb", v.eta_emb());
  o.kv("phi_emb", v.eta_emb());
}

Matrix gaussian_table(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (double& v : m.data) v = g(rng);
  return m;
}

double rms_row_error(const Matrix& table, const std::function<std::vector<double>(std::size_t)>& row) {
  double total = 0.0;
  for (std::size_t i = 0; i < table.rows; ++i) {
    const auto r = row(i);
    double e = 0.0;
    for (std::size_t j = 0; j < table.cols; ++j) e += (r[j] - table(i, j)) * (r[j] - table(i, j));
    total += e;
  }
  return table.rows ? std::sqrt(total / static_cast<double>(table.rows)) : 0.0;
}

struct Flags {
  // shared
  bool pretty = false;
  std::string vocab_path;
  std::string output;
  // compress
  std::string input;
  std::string shape;
  std::string auto_shape;
  double eps = 0.0;
  std::size_t max_rank = 0;
  std::size_t threads = 1;
  std::string model_name;
  // reconstruct / add / rm
  std::string ids;
  TokenId id = 0;
  std::string embedding;
  std::uint64_t row = 0;
  // stats
  std::string dense;
  std::size_t svd_k = 0;
  // plan-shape
  std::size_t plan_d = 0;
  std::string policy = "max";
  std::size_t plan_rank = 1;
  bool all = false;
  // energy
  std::string preset = "paper";
  double nu = 0.0;
  double tau = 0.0;
  std::uint64_t energy_vocab = 50257;
  std::uint64_t energy_dim = 768;
  std::uint64_t length = kDefaultTextLength;
  std::uint64_t p = 0;
  std::string uniform;
  std::string ranks;
  std::uint64_t k = 0;
  std::string mode = "paper-formula";
  std::string format = "csv";
  // bench
  std::string suite = "all";
  std::size_t bench_dim = 768;
  std::size_t bench_vocab = 64;
  std::size_t reps = kDefaultBenchReps;
  std::uint64_t seed = 42;
  // metrics
  std::string before;
  std::string after;
  double eta_emb = 0.0;
  double log_base = 10.0;
};

CompressSpec spec_from_flags(const Flags& f, std::size_t d) {
  if (!f.shape.empty() && !f.auto_shape.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "--shape and --auto-shape are exclusive");
  }
  const ShapePolicy policy = !f.shape.empty()
                                 ? ShapePolicy::explicit_shape(parse_shape(f.shape))
                                 : ShapePolicy::parse(f.auto_shape.empty() ? "max" : f.auto_shape);
  const std::size_t cap = f.max_rank ? f.max_rank : std::numeric_limits<std::size_t>::max();
  return plan(d, policy, cap, f.eps).to_compress_spec();
}

int cmd_compress(const Flags& f, std::ostream& out) {
  const EmbeddingTable table = read_emb1(f.input);
  const CompressSpec spec = spec_from_flags(f, table.dim);
  VocabMetadata meta;
  meta.model_name = f.model_name;
  meta.created_unix = std::chrono::duration_cast<std::chrono::seconds>(
                          std::chrono::system_clock::now().time_since_epoch())
                          .count();
  const CompressedVocab vocab = CompressedVocab::build(table.to_matrix(), spec, f.threads, meta);
  FileLock lock(f.output);
  vocab.save(f.output);
  Output o(out, f.pretty);
  report_store(o, vocab);
  o.flush();
  return kExitOk;
}

int cmd_reconstruct(const Flags& f, std::ostream& out) {
  const CompressedVocab vocab = CompressedVocab::load(f.vocab_path);
  const auto ids = f.ids.empty() ? vocab.ids() : parse_ids(f.ids);
  const auto rows = vocab.lookup_batch(ids);
  Matrix m(ids.size(), vocab.dim());
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = 0; j < vocab.dim(); ++j) m(i, j) = rows[i * vocab.dim() + j];
  write_emb1(f.output, EmbeddingTable::from_matrix(m));
  Output o(out, f.pretty);
  o.kv("rows", static_cast<std::uint64_t>(ids.size()));
  o.kv("d", static_cast<std::uint64_t>(vocab.dim()));
  o.flush();
  return kExitOk;
}

int cmd_add_token(const Flags& f, std::ostream& out) {
  const EmbeddingTable emb = read_emb1(f.embedding);
  if (f.row >= emb.vocab) {
    throw Error(ErrorCode::kInvalidArgument, "--row outside the embedding file");
  }
  const auto row = emb.row(f.row);
  const std::vector<double> x(row.begin(), row.end());
  FileLock lock(f.vocab_path);
  CompressedVocab vocab = CompressedVocab::load(f.vocab_path);
  vocab.add_token(f.id, x);
  vocab.save(f.vocab_path);
  Output o(out, f.pretty);
  o.kv("id", f.id);
  o.kv("params", param_count(vocab.entry(f.id)));
  o.kv("ranks", format_shape(vocab.entry(f.id).ranks));
  o.kv("total_params", vocab.total_params());
  o.flush();
  return kExitOk;
}

int cmd_rm_token(const Flags& f, std::ostream& out) {
  FileLock lock(f.vocab_path);
  CompressedVocab vocab = CompressedVocab::load(f.vocab_path);
  vocab.remove_token(f.id);
  vocab.save(f.vocab_path);
  Output o(out, f.pretty);
  o.kv("id", f.id);
  o.kv("total_params", vocab.total_params());
  o.flush();
  return kExitOk;
}

int cmd_stats(const Flags& f, std::ostream& out) {
  const CompressedVocab vocab = CompressedVocab::load(f.vocab_path);
  Output o(out, f.pretty);
  report_store(o, vocab);
  // Histogram of interior ranks over every entry and position.
  std::map<std::size_t, std::uint64_t> hist;
  std::uint64_t flops = 0;
  for (TokenId id : vocab.ids()) {
    const TTVector& tt = vocab.entry(id);
    for (std::size_t k = 1; k + 1 < tt.ranks.size(); ++k) ++hist[tt.ranks[k]];
    flops += reconstruction_flops(tt);
  }
  std::string h;
  for (const auto& [r, c] : hist) h += (h.empty() ? "" : ";") + std::to_string(r) + ":" + std::to_string(c);
  o.kv("rank_histogram", h);
  o.kv("reconstruction_flops_total", flops);
  if (!f.dense.empty()) {
    const Matrix table = read_emb1(f.dense).to_matrix();
    if (table.cols != vocab.dim()) throw Error(ErrorCode::kShapeMismatch, "dense table d differs");
    const auto ids = vocab.ids();
    const double tt_rms = rms_row_error(table, [&](std::size_t i) { return vocab.lookup(ids.at(i)); });
    o.kv("tt.rms_row_error", tt_rms);
    if (f.svd_k) {
      const LowRankTable lrt = LowRankTable::compress(table, f.svd_k);
      std::istringstream lines(lrt.describe());
      std::string line;
      while (std::getline(lines, line)) {
        const auto eq = line.find('=');
        o.kv(line.substr(0, eq), line.substr(eq + 1));
      }
      o.kv("lrt1.rms_row_error",
           rms_row_error(table, [&](std::size_t i) { return lrt.lookup_row(i); }));
    }
  }
  o.flush();
  return kExitOk;
}

int cmd_plan_shape(const Flags& f, std::ostream& out) {
  const ShapePolicy policy = ShapePolicy::parse(f.policy);
  std::vector<ShapePlan> plans{plan(f.plan_d, policy, f.plan_rank, f.eps)};
  if (f.all) {
    for (const Shape& s : optimal_shapes(f.plan_d, f.plan_rank)) {
      if (s == plans.front().shape) continue;
      if (policy.kind == ShapePolicy::Kind::kTargetOrder && s.size() != policy.order) continue;
      plans.push_back(plan(f.plan_d, ShapePolicy::explicit_shape(s), f.plan_rank, f.eps));
    }
  }
  for (const ShapePlan& p : plans) {
    out << format_shape(p.shape) << " params " << p.predicted_params << " eta "
        << format_number(p.predicted_eta) << "\n";
  }
  return kExitOk;
}

int cmd_energy(const Flags& f, std::ostream& out) {
  const EnergyPreset& preset = energy_preset(f.preset);
  EnergyConfig cfg;
  cfg.nu = f.nu > 0.0 ? f.nu : preset.nu;
  cfg.tau = f.tau > 0.0 ? f.tau : preset.tau;
  cfg.comm = preset.comm;
  cfg.vocab = f.energy_vocab;
  cfg.dim = f.energy_dim;
  cfg.length = f.length;
  cfg.svd_rank = f.k;
  cfg.mode = parse_energy_mode(f.mode);
  if (!f.uniform.empty()) {
    const Shape u = parse_shape(f.uniform);
    if (u.size() != 3) throw Error(ErrorCode::kInvalidArgument, "--uniform takes N,I,r");
    cfg.tt_uniform = UniformTT{u[0], u[1], u[2]};
  } else if (!f.shape.empty()) {
    const Shape shape = parse_shape(f.shape);
    const Shape ranks = parse_shape(f.ranks);
    if (ranks.size() != shape.size() + 1 || ranks.front() != 1 || ranks.back() != 1) {
      throw Error(ErrorCode::kInvalidArgument, "--ranks must be r_0..r_N with r_0 = r_N = 1");
    }
    cfg.tt_params_per_token = param_count(shape, ranks);
    cfg.tt_flops_per_token = reconstruction_flops(shape, ranks);
  } else if (f.p > 0) {
    cfg.tt_params_per_token = f.p;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "give one of --p, --uniform or --shape/--ranks");
  }
  const EnergyReport r = compare(cfg);
  if (f.format == "csv") {
    out << energy_csv_header() << "\n" << energy_csv_row(cfg, r) << "\n";
  } else {
    Output o(out, f.pretty);
    std::istringstream lines(energy_key_values(cfg, r));
    std::string line;
    while (std::getline(lines, line)) {
      const auto eq = line.find('=');
      o.kv(line.substr(0, eq), line.substr(eq + 1));
    }
    o.flush();
  }
  return kExitOk;
}

int cmd_bench(const Flags& f, std::ostream& out) {
  BenchOptions opt;
  opt.reps = f.reps;
  opt.threads = f.threads;
  std::vector<BenchResult> results;
  const bool all = f.suite == "all";
  const std::vector<std::string> known{"all", "compress", "reconstruct", "lookup", "svd"};
  if (std::find(known.begin(), known.end(), f.suite) == known.end()) {
    throw Error(ErrorCode::kInvalidArgument, "unknown suite '" + f.suite + "'");
  }

  Matrix table;
  CompressedVocab vocab(CompressSpec{{1}, {}, 0.0});
  if (!f.vocab_path.empty()) {
    vocab = CompressedVocab::load(f.vocab_path);
  } else {
    table = gaussian_table(f.bench_vocab, f.bench_dim, f.seed);
    Flags g = f;
    if (g.shape.empty() && g.auto_shape.empty()) g.auto_shape = "order:3";
    const CompressSpec spec = spec_from_flags(g, f.bench_dim);
    if (all || f.suite == "compress") results.push_back(bench_compress(table, spec, opt));
    vocab = CompressedVocab::build(table, spec, f.threads);
  }
  const auto ids = vocab.ids();
  if (all || f.suite == "reconstruct") results.push_back(bench_reconstruct(vocab, ids, opt));
  if (all || f.suite == "lookup") results.push_back(bench_lookup_text(vocab, f.length, f.seed, opt));
  if ((all || f.suite == "svd") && table.rows > 0) {
    std::size_t k = f.svd_k ? f.svd_k : std::max<std::size_t>(1, std::min(table.rows, table.cols) / 4);
    const LowRankTable lrt = LowRankTable::compress(table, k);
    results.push_back(bench_svd_lookup(lrt, ids, opt));
  }
  out << bench_csv_header() << "\n";
  for (const auto& r : results) out << bench_csv_row(r) << "\n";
  if (f.pretty) {
    out << "# median-of-means:";
    for (const auto& r : results) out << " " << r.op << "=" << format_number(r.median_of_means);
    out << "\n" << bench_reference_notes();
  }
  return kExitOk;
}

int cmd_export_dense(const Flags& f, std::ostream& out) {
  const CompressedVocab vocab = CompressedVocab::load(f.vocab_path);
  const auto ids = vocab.ids();
  const auto rows = vocab.lookup_batch(ids);
  EmbeddingTable t;
  t.vocab = ids.size();
  t.dim = static_cast<std::uint32_t>(vocab.dim());
  t.values.assign(rows.begin(), rows.end());
  write_emb1(f.output, t);
  bool dense_ids = true;
  for (std::size_t i = 0; i < ids.size(); ++i) dense_ids = dense_ids && ids[i] == i;
  Output o(out, f.pretty);
  o.kv("rows", static_cast<std::uint64_t>(ids.size()));
  o.kv("d", static_cast<std::uint64_t>(vocab.dim()));
  o.kv("dense_ids", dense_ids ? "true" : "false");
  o.flush();
  return kExitOk;
}

int cmd_metrics(const Flags& f, std::ostream& out) {
  auto read = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
    return read_log_probs(in);
  };
  const LogProbSequence before = read(f.before);
  Output o(out, f.pretty);
  o.kv("tokens", static_cast<std::uint64_t>(before.values.size()));
  o.kv("ln_ppl_before", ln_perplexity(before));
  o.kv("ppl_before", perplexity(before));
  o.kv("ppl_before_normalized", perplexity_normalized(before));
  if (!f.after.empty()) {
    const LogProbSequence after = read(f.after);
    o.kv("ln_ppl_after", ln_perplexity(after));
    o.kv("ppl_after", perplexity(after));
    o.kv("ppl_after_normalized", perplexity_normalized(after));
    o.kv("delta_ln_ppl", delta_ln_ppl(before, after));
    if (f.eta_emb != 0.0) o.kv("tradeoff", tradeoff_score(before, after, f.eta_emb, f.log_base));
  }
  o.flush();
  return kExitOk;
}

// Expands "--config FILE" after the subcommand into --key=value arguments
// for every key the command line does not already set. Lines are key=value;
// blank lines and lines starting with '#' are ignored.
std::vector<std::string> with_config(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::size_t sub = 1;
  while (sub < args.size() && args[sub].rfind("-", 0) == 0) ++sub;
  std::string path;
  for (std::size_t i = sub + 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config file " + path);
  auto given = [&](const std::string& key) {
    for (std::size_t i = sub + 1; i < args.size(); ++i) {
      if (args[i] == "--" + key || args[i].rfind("--" + key + "=", 0) == 0) return true;
    }
    return false;
  };
  auto trim = [](std::string t) {
    const auto b = t.find_first_not_of(" \t\r");
    const auto e = t.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
  };
  std::vector<std::string> extra;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key == "config" || given(key)) continue;
    extra.push_back("--" + key + "=" + trim(line.substr(eq + 1)));
  }
  if (sub < args.size()) args.insert(args.begin() + sub + 1, extra.begin(), extra.end());
  return args;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tensor-train compression of token embedding tables", "ttemb"};
  app.require_subcommand(1);
  Flags f;
  std::string config_path;

  auto sub = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--config", config_path, "key=value file supplying defaults for this command");
    s->add_flag("--pretty", f.pretty, "human-readable output");
    return s;
  };

  CLI::App* compress = sub("compress", "compress a dense EMB1 table into a TTE1 store");
  opt(compress, "input", f.input, "dense EMB1 input")->required();
  opt(compress, "output", f.output, "TTE1 output")->required();
  opt(compress, "shape", f.shape, "explicit tensor shape, e.g. 8,8,12");
  opt(compress, "auto-shape", f.auto_shape, "max | order:N (default max)");
  opt(compress, "eps", f.eps, "relative accuracy epsilon");
  opt(compress, "max-rank", f.max_rank, "uniform interior rank cap (0 = structural maximum)");
  opt(compress, "threads", f.threads, "compression workers");
  opt(compress, "model-name", f.model_name, "label kept with the in-memory store");

  CLI::App* recon = sub("reconstruct", "decompress selected tokens into an EMB1 file");
  opt(recon, "vocab", f.vocab_path, "TTE1 store")->required();
  opt(recon, "ids", f.ids, "comma-separated token ids (default: all)");
  opt(recon, "output", f.output, "EMB1 output")->required();

  CLI::App* add = sub("add-token", "compress one new token into a store");
  opt(add, "vocab", f.vocab_path, "TTE1 store")->required();
  opt(add, "id", f.id, "new token id")->required();
  opt(add, "embedding", f.embedding, "EMB1 file holding the embedding")->required();
  opt(add, "row", f.row, "row of the EMB1 file to use");

  CLI::App* rm = sub("rm-token", "delete one token from a store");
  opt(rm, "vocab", f.vocab_path, "TTE1 store")->required();
  opt(rm, "id", f.id, "token id")->required();

  CLI::App* stats = sub("stats", "parameter counts, ratios and rank histogram");
  opt(stats, "vocab", f.vocab_path, "TTE1 store")->required();
  opt(stats, "dense", f.dense, "original EMB1 table for error reporting");
  opt(stats, "svd-k", f.svd_k, "also factor the dense table at this rank");

  CLI::App* plan_cmd = sub("plan-shape", "choose a tensor shape for dimension d");
  opt(plan_cmd, "d", f.plan_d, "embedding dimension")->required();
  opt(plan_cmd, "policy", f.policy, "max | order:N | explicit shape");
  opt(plan_cmd, "rank", f.plan_rank, "uniform interior rank cap");
  opt(plan_cmd, "eps", f.eps, "relative accuracy epsilon");
  plan_cmd->add_flag("--all", f.all, "also list every storage-minimal shape");

  CLI::App* energy = sub("energy", "analytic inference energy estimate");
  opt(energy, "preset", f.preset, "paper | pi5-{low,mid,high} | a100-{low,mid,high}");
  opt(energy, "nu", f.nu, "memory energy per scalar in pJ (overrides preset)");
  opt(energy, "tau", f.tau, "compute energy per operation in pJ (overrides preset)");
  opt(energy, "V", f.energy_vocab, "vocabulary size");
  opt(energy, "d", f.energy_dim, "embedding dimension");
  opt(energy, "l", f.length, "tokens per query");
  opt(energy, "p", f.p, "TT parameters per token");
  opt(energy, "uniform", f.uniform, "uniform TT as N,I,r");
  opt(energy, "shape", f.shape, "TT shape (with --ranks)");
  opt(energy, "ranks", f.ranks, "TT ranks r_0..r_N (with --shape)");
  opt(energy, "k", f.k, "matrix SVD rank");
  opt(energy, "mode", f.mode, "paper-formula | exact-count");
  opt(energy, "format", f.format, "csv | kv");

  CLI::App* bench = sub("bench", "host latency and flop counts");
  opt(bench, "suite", f.suite, "all | compress | reconstruct | lookup | svd");
  opt(bench, "vocab", f.vocab_path, "benchmark an existing TTE1 store instead");
  opt(bench, "d", f.bench_dim, "synthetic embedding dimension");
  opt(bench, "V", f.bench_vocab, "synthetic vocabulary size");
  opt(bench, "shape", f.shape, "explicit tensor shape");
  opt(bench, "auto-shape", f.auto_shape, "max | order:N (default order:3)");
  opt(bench, "eps", f.eps, "relative accuracy epsilon");
  opt(bench, "max-rank", f.max_rank, "uniform interior rank cap (0 = structural maximum)");
  opt(bench, "reps", f.reps, "timed repetitions");
  opt(bench, "l", f.length, "tokens per text for the lookup suite");
  opt(bench, "seed", f.seed, "seed for the synthetic table and token choice");
  opt(bench, "threads", f.threads, "compression workers");
  opt(bench, "svd-k", f.svd_k, "matrix SVD rank (default min(V,d)/4)");

  CLI::App* exp = sub("export-dense", "decompress a whole store into EMB1, ascending ids");
  opt(exp, "vocab", f.vocab_path, "TTE1 store")->required();
  opt(exp, "output", f.output, "EMB1 output")->required();

  CLI::App* met = sub("metrics", "perplexity metrics from per-token log-probabilities");
  opt(met, "before", f.before, "log-probs of the original model, one per line")->required();
  opt(met, "after", f.after, "log-probs of the compressed model");
  opt(met, "eta-emb", f.eta_emb, "embedding compression rate for the trade-off score");
  opt(met, "log-base", f.log_base, "log base of the trade-off score");

  std::vector<std::string> args;
  try {
    args = with_config(argc, argv);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  std::vector<const char*> expanded;
  for (const auto& a : args) expanded.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(expanded.size()), expanded.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends.
      out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
      return kExitOk;
    }
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*compress) return cmd_compress(f, out);
    if (*recon) return cmd_reconstruct(f, out);
    if (*add) return cmd_add_token(f, out);
    if (*rm) return cmd_rm_token(f, out);
    if (*stats) return cmd_stats(f, out);
    if (*plan_cmd) return cmd_plan_shape(f, out);
    if (*energy) return cmd_energy(f, out);
    if (*bench) return cmd_bench(f, out);
    if (*exp) return cmd_export_dense(f, out);
    if (*met) return cmd_metrics(f, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace ttemb
