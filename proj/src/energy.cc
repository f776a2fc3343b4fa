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

#include "ttemb/energy.h"

#include <algorithm>
#include <cmath>

#include "ttemb/error.h"
#include "ttemb/format.h"
#include "ttemb/tt.h"

namespace ttemb {

namespace {

// Midpoint of a range.
constexpr double mid(double lo, double hi) { return 0.5 * (lo + hi); }

// Cortex-A76: add 1.0-2.5, mult 1.2-3.0, memory 70-260 pJ per float32;
// A100: add 5-12, mult 6-15, memory 100-450. One operation is charged the
// mean of add and mult. Links: wired 50-350 nJ, wireless 400-6000 nJ.
constexpr double kPiOpLow = mid(1.0, 1.2);
constexpr double kPiOpHigh = mid(2.5, 3.0);
constexpr double kGpuOpLow = mid(5.0, 6.0);
constexpr double kGpuOpHigh = mid(12.0, 15.0);

std::uint64_t uniform_exact_params(const UniformTT& u) {
  if (u.order <= 1) return u.mode_size;
  return u.rank * u.mode_size * (2 + (u.order - 2) * u.rank);
}

std::uint64_t uniform_flops(const UniformTT& u) {
  std::vector<std::size_t> shape(u.order, u.mode_size);
  std::vector<std::size_t> ranks(u.order + 1, u.rank);
  ranks.front() = 1;
  ranks.back() = 1;
  return reconstruction_flops(shape, ranks);
}

}  // namespace

const std::vector<EnergyPreset>& energy_presets() {
  static const std::vector<EnergyPreset> presets = {
      {"paper", 5.0, 1.0, 0.0},
      {"pi5-low", 70.0, kPiOpLow, 400e3},
      {"pi5-mid", mid(70.0, 260.0), mid(kPiOpLow, kPiOpHigh), mid(400e3, 6000e3)},
      {"pi5-high", 260.0, kPiOpHigh, 6000e3},
      {"a100-low", 100.0, kGpuOpLow, 50e3},
      {"a100-mid", mid(100.0, 450.0), mid(kGpuOpLow, kGpuOpHigh), mid(50e3, 350e3)},
      {"a100-high", 450.0, kGpuOpHigh, 350e3},
  };
  return presets;
}

const EnergyPreset& energy_preset(const std::string& name) {
  for (const auto& p : energy_presets())
    if (p.name == name) return p;
  throw Error(ErrorCode::kInvalidArgument, "unknown energy preset '" + name + "'");
}

void EnergyConfig::validate() const {
  if (!(nu > 0.0) || !(tau > 0.0) || !std::isfinite(nu) || !std::isfinite(tau)) {
    throw Error(ErrorCode::kInvalidArgument, "nu and tau must be positive");
  }
  if (!tt_params_per_token && !tt_uniform) {
    throw Error(ErrorCode::kInvalidArgument, "no TT parameter budget given");
  }
  if (mode == EnergyMode::kExactCount && !tt_flops_per_token && !tt_uniform) {
    throw Error(ErrorCode::kInvalidArgument,
                "exact-count mode needs reconstruction flops per token");
  }
}

std::uint64_t tt_params_for(const EnergyConfig& cfg) {
  if (cfg.tt_params_per_token) return *cfg.tt_params_per_token;
  const UniformTT& u = *cfg.tt_uniform;
  if (cfg.mode == EnergyMode::kPaperFormula) return u.order * u.mode_size * u.rank * u.rank;
  return uniform_exact_params(u);
}

EnergyPair baseline_energy(const EnergyConfig& cfg) {
  const double d = static_cast<double>(cfg.dim);
  return {cfg.nu * (d * static_cast<double>(cfg.vocab) + static_cast<double>(cfg.length) * d),
          0.0};
}

EnergyPair tt_energy(const EnergyConfig& cfg) {
  cfg.validate();
  const double p = static_cast<double>(tt_params_for(cfg));
  const double v = static_cast<double>(cfg.vocab);
  const double l = static_cast<double>(cfg.length);
  const double d = static_cast<double>(cfg.dim);
  EnergyPair e;
  e.memory = cfg.nu * (v * p + l * p + l * d);
  if (cfg.mode == EnergyMode::kPaperFormula) {
    e.compute = cfg.tau * p;
  } else {
    const std::uint64_t flops =
        cfg.tt_flops_per_token ? *cfg.tt_flops_per_token : uniform_flops(*cfg.tt_uniform);
    e.compute = cfg.tau * l * static_cast<double>(flops);
  }
  return e;
}

EnergyPair svd_energy(const EnergyConfig& cfg, bool* clamped) {
  const double k = static_cast<double>(cfg.svd_rank);
  const double v = static_cast<double>(cfg.vocab);
  const double l = static_cast<double>(cfg.length);
  const double d = static_cast<double>(cfg.dim);
  EnergyPair e;
  double ops = 0.0;
  if (cfg.mode == EnergyMode::kPaperFormula) {
    e.memory = cfg.nu * (k * (v + 2.0 * d + l + 1.0) + l * d);
    ops = 2.0 * l * d * k - l * d + k * d;
  } else {
    e.memory = cfg.nu * (k * (v + d) + l * d);
    ops = l * (2.0 * d * k - d);
  }
  const bool negative = ops < 0.0;
  if (clamped) *clamped = negative;
  e.compute = cfg.tau * std::max(0.0, ops);
  return e;
}

EnergyReport compare(const EnergyConfig& cfg) {
  cfg.validate();
  EnergyReport r;
  const EnergyPair base = baseline_energy(cfg);
  const EnergyPair tt = tt_energy(cfg);
  const EnergyPair svd = svd_energy(cfg, &r.svd_tau_clamped);
  r.e_nu = base.memory;
  r.e_tau = base.compute;
  r.e_nu_tt = tt.memory;
  r.e_tau_tt = tt.compute;
  r.e_nu_svd = svd.memory;
  r.e_tau_svd = svd.compute;
  const double denom = r.e_nu + r.e_tau;
  r.omega_tt = denom > 0.0 ? (r.e_nu_tt + r.e_tau_tt) / denom : 0.0;
  r.omega_svd = denom > 0.0 ? (r.e_nu_svd + r.e_tau_svd) / denom : 0.0;
  r.p = tt_params_for(cfg);
  if (cfg.tt_uniform) {
    const UniformTT& u = *cfg.tt_uniform;
    r.p_paper = u.order * u.mode_size * u.rank * u.rank;
    r.p_exact = uniform_exact_params(u);
  } else {
    r.p_paper = r.p_exact = r.p;
  }
  const double v = static_cast<double>(cfg.vocab);
  r.comm_dense = cfg.comm * v * static_cast<double>(cfg.dim);
  r.comm_tt = cfg.comm * v * static_cast<double>(r.p);
  r.comm_svd = cfg.comm * static_cast<double>(cfg.svd_rank) *
               (v + static_cast<double>(cfg.dim));
  return r;
}

std::string mode_name(EnergyMode mode) {
  return mode == EnergyMode::kPaperFormula ? "paper-formula" : "exact-count";
}

EnergyMode parse_energy_mode(const std::string& text) {
  if (text == "paper-formula" || text == "paper") return EnergyMode::kPaperFormula;
  if (text == "exact-count" || text == "exact") return EnergyMode::kExactCount;
  throw Error(ErrorCode::kInvalidArgument, "unknown energy mode '" + text + "'");
}

std::string energy_csv_header() {
  return "V,d,l,p,k,nu,tau,mode,E_nu,E_tau,E_nu_tt,E_tau_tt,E_nu_svd,E_tau_svd,"
         "omega_tt,omega_svd";
}

std::string energy_csv_row(const EnergyConfig& cfg, const EnergyReport& r) {
  std::string s;
  s += std::to_string(cfg.vocab) + "," + std::to_string(cfg.dim) + "," +
       std::to_string(cfg.length) + "," + std::to_string(r.p) + "," +
       std::to_string(cfg.svd_rank) + "," + format_number(cfg.nu) + "," +
       format_number(cfg.tau) + "," + mode_name(cfg.mode);
  for (double v : {r.e_nu, r.e_tau, r.e_nu_tt, r.e_tau_tt, r.e_nu_svd, r.e_tau_svd,
                   r.omega_tt, r.omega_svd}) {
    s += "," + format_number(v);
  }
  return s;
}

std::string energy_key_values(const EnergyConfig& cfg, const EnergyReport& r) {
  std::string s;
  auto kv = [&](const std::string& k, const std::string& v) { s += k + "=" + v + "\n"; };
  kv("mode", mode_name(cfg.mode));
  kv("nu", format_number(cfg.nu));
  kv("tau", format_number(cfg.tau));
  kv("V", std::to_string(cfg.vocab));
  kv("d", std::to_string(cfg.dim));
  kv("l", std::to_string(cfg.length));
  kv("p", std::to_string(r.p));
  kv("p_paper", std::to_string(r.p_paper));
  kv("p_exact", std::to_string(r.p_exact));
  kv("p_discrepancy",
     std::to_string(static_cast<std::int64_t>(r.p_paper) - static_cast<std::int64_t>(r.p_exact)));
  kv("k", std::to_string(cfg.svd_rank));
  kv("E_nu", format_number(r.e_nu));
  kv("E_tau", format_number(r.e_tau));
  kv("E_nu_tt", format_number(r.e_nu_tt));
  kv("E_tau_tt", format_number(r.e_tau_tt));
  kv("E_nu_svd", format_number(r.e_nu_svd));
  kv("E_tau_svd", format_number(r.e_tau_svd));
  kv("E_tau_svd_clamped", r.svd_tau_clamped ? "true" : "false");
  kv("omega_tt", format_number(r.omega_tt));
  kv("omega_svd", format_number(r.omega_svd));
  kv("comm_download_dense", format_number(r.comm_dense));
  kv("comm_download_tt", format_number(r.comm_tt));
  kv("comm_download_svd", format_number(r.comm_svd));
  return s;
}

}  // namespace ttemb
