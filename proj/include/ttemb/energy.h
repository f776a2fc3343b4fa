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

#ifndef TTEMB_ENERGY_H_
#define TTEMB_ENERGY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ttemb {

// Analytic inference-energy estimate for the embedding stage of one query of
// l tokens. All energies are in pJ; nu is the memory cost per float32 scalar,
// tau the compute cost per float32 operation.

enum class EnergyMode {
  kPaperFormula,  // the closed-form equations as written
  kExactCount,    // per-token reconstruction work scaled by l
};

// Per-token TT budget either as an exact parameter count or as a uniform
// (N, I, r) triple.
struct UniformTT {
  std::uint64_t order = 0;
  std::uint64_t mode_size = 0;
  std::uint64_t rank = 0;
};

struct EnergyPreset {
  std::string name;
  double nu = 0.0;
  double tau = 0.0;
  double comm = 0.0;  // one-time transfer cost per scalar
};

// "paper" (nu/tau = 5), and low/mid/high presets for pi5 (Cortex-A76,
// wireless link) and a100 (wired link).
const std::vector<EnergyPreset>& energy_presets();
// InvalidArgument for an unknown name.
const EnergyPreset& energy_preset(const std::string& name);

struct EnergyConfig {
  double nu = 5.0;
  double tau = 1.0;
  double comm = 0.0;
  std::uint64_t vocab = 0;  // V
  std::uint64_t dim = 0;    // d
  std::uint64_t length = 0; // l
  std::optional<std::uint64_t> tt_params_per_token;
  std::optional<UniformTT> tt_uniform;
  // Reconstruction flops per token; required in exact-count mode unless a
  // uniform triple is given (it is then derived from the uniform shape).
  std::optional<std::uint64_t> tt_flops_per_token;
  std::uint64_t svd_rank = 0;  // k
  EnergyMode mode = EnergyMode::kPaperFormula;

  // Throws InvalidArgument for non-positive nu/tau or a missing TT budget.
  void validate() const;
};

struct EnergyReport {
  double e_nu = 0, e_tau = 0;
  double e_nu_tt = 0, e_tau_tt = 0;
  double e_nu_svd = 0, e_tau_svd = 0;
  double omega_tt = 0, omega_svd = 0;
  std::uint64_t p = 0;          // TT parameters per token used in the formulas
  std::uint64_t p_paper = 0;    // N I r^2 when a uniform triple is given
  std::uint64_t p_exact = 0;    // boundary-corrected count for the same triple
  bool svd_tau_clamped = false; // E''_tau was negative and clamped to 0
  double comm_dense = 0, comm_tt = 0, comm_svd = 0;  // one-time downloads
};

struct EnergyPair {
  double memory = 0.0;
  double compute = 0.0;
};

// E_nu = nu (d V + l d), E_tau = 0.
EnergyPair baseline_energy(const EnergyConfig& cfg);
// kPaperFormula: E'_nu = nu (V p + l p + l d), E'_tau = tau p.
// kExactCount: same memory term, E'_tau = tau * l * flops_per_token.
EnergyPair tt_energy(const EnergyConfig& cfg);
// kPaperFormula: E''_nu = nu [k (V + 2d + l + 1) + l d],
//                E''_tau = tau (2 l d k - l d + k d), clamped at 0.
// kExactCount: E''_nu = nu [k (V + d) + l d], E''_tau = tau * l * (2 d k - d).
EnergyPair svd_energy(const EnergyConfig& cfg, bool* clamped = nullptr);
EnergyReport compare(const EnergyConfig& cfg);

// TT parameters per token the formulas use for this config and mode.
std::uint64_t tt_params_for(const EnergyConfig& cfg);

std::string mode_name(EnergyMode mode);
EnergyMode parse_energy_mode(const std::string& text);

// Fixed CSV layout: V,d,l,p,k,nu,tau,mode,E_nu,E_tau,E_nu_tt,E_tau_tt,
// E_nu_svd,E_tau_svd,omega_tt,omega_svd
std::string energy_csv_header();
std::string energy_csv_row(const EnergyConfig& cfg, const EnergyReport& r);
std::string energy_key_values(const EnergyConfig& cfg, const EnergyReport& r);

}  // namespace ttemb

#endif  // TTEMB_ENERGY_H_
