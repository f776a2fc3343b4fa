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

#include <gtest/gtest.h>

#include "ttemb/error.h"

namespace ttemb {
namespace {

EnergyConfig gpt2(double nu, double tau) {
  EnergyConfig c;
  c.nu = nu;
  c.tau = tau;
  c.vocab = 50257;
  c.dim = 768;
  c.length = 50;
  c.tt_params_per_token = 384;
  c.svd_rank = 192;
  return c;
}

TEST(Energy, BaselineGpt2) {
  const EnergyPair e = baseline_energy(gpt2(1, 1));
  EXPECT_EQ(e.memory, 38635776.0);
  EXPECT_EQ(e.compute, 0.0);
  EXPECT_EQ(baseline_energy(gpt2(5, 1)).memory, 5 * 38635776.0);
}

TEST(Energy, BaselineDegenerate) {
  EnergyConfig c = gpt2(3, 1);
  c.length = 0;
  EXPECT_EQ(baseline_energy(c).memory, 3.0 * 768 * 50257);
  c.nu = 0;
  EXPECT_EQ(baseline_energy(c).memory, 0.0);
}

TEST(Energy, TtHalfBudget) {
  const EnergyConfig c = gpt2(1, 0.2);
  const EnergyPair e = tt_energy(c);
  // 384 * 50257 + 50 * 384 + 50 * 768
  EXPECT_EQ(e.memory, 19298688.0 + 19200 + 38400);
  EXPECT_NEAR(e.compute, 0.2 * 384, 1e-12);
  EXPECT_NEAR(compare(c).omega_tt, 0.501, 5e-4);
}

TEST(Energy, NoCompressionNoInputIsBaseline) {
  EnergyConfig c = gpt2(2, 1);
  c.length = 0;
  c.tt_params_per_token = 768;
  EXPECT_EQ(tt_energy(c).memory, baseline_energy(c).memory);
}

TEST(Energy, EightEightTwelve) {
  EnergyConfig c = gpt2(5, 1);
  c.tt_params_per_token = 208;
  const EnergyReport r = compare(c);
  EXPECT_EQ(r.p, 208u);
  const double expect = (5.0 * (50257.0 * 208 + 50 * 208 + 50 * 768) + 208) / (5.0 * 38635776);
  EXPECT_NEAR(r.omega_tt, expect, 1e-15);
  EXPECT_NEAR(r.omega_tt, 0.272, 1e-3);
}

TEST(Energy, SvdGpt2) {
  bool clamped = true;
  const EnergyPair e = svd_energy(gpt2(1, 0.2), &clamped);
  EXPECT_EQ(e.memory, 9992448.0);
  EXPECT_NEAR(e.compute, 2970931.2, 1e-6);
  EXPECT_FALSE(clamped);
  EXPECT_NEAR(compare(gpt2(1, 0.2)).omega_svd, 0.335, 5e-3);
}

TEST(Energy, SvdDegenerate) {
  EnergyConfig c = gpt2(1, 1);
  c.svd_rank = 0;
  bool clamped = false;
  const EnergyPair e = svd_energy(c, &clamped);
  EXPECT_EQ(e.memory, 50.0 * 768);
  EXPECT_EQ(e.compute, 0.0);
  EXPECT_TRUE(clamped);
  c.svd_rank = 10;
  c.length = 0;
  EXPECT_EQ(svd_energy(c).compute, 10.0 * 768);
}

TEST(Energy, NoCompressionNoSaving) {
  EnergyConfig c = gpt2(5, 1);
  c.tt_params_per_token = 768;
  c.svd_rank = 768;
  const EnergyReport r = compare(c);
  EXPECT_GE(r.omega_tt, 0.99);
  EXPECT_GE(r.omega_svd, 0.99);
}

TEST(Energy, TtBeatsSvdAtMatchedBudget) {
  // Both methods store half the dense table: V p = V d / 2 and k (V + d) ~ V d / 2.
  EnergyConfig c = gpt2(5, 1);
  c.svd_rank = 50257ull * 768 / 2 / (50257 + 768);
  EXPECT_EQ(c.svd_rank, 378u);
  const EnergyReport r = compare(c);
  EXPECT_LT(r.omega_tt, r.omega_svd);
}

TEST(Energy, UniformTripleBothCounts) {
  EnergyConfig c = gpt2(5, 1);
  c.tt_params_per_token.reset();
  c.tt_uniform = UniformTT{3, 9, 4};
  EnergyReport r = compare(c);
  EXPECT_EQ(r.p_paper, 3u * 9 * 16);
  EXPECT_EQ(r.p_exact, 4u * 9 + 16 * 9 + 4 * 9);
  EXPECT_EQ(r.p, r.p_paper);
  c.mode = EnergyMode::kExactCount;
  r = compare(c);
  EXPECT_EQ(r.p, r.p_exact);
  // 2*(9*1*9*4) + 2*(81*4*9*1)
  EXPECT_EQ(r.e_tau_tt, 50.0 * (2592 + 5832));
}

TEST(Energy, ExactModeNeedsFlops) {
  EnergyConfig c = gpt2(5, 1);
  c.mode = EnergyMode::kExactCount;
  EXPECT_THROW(compare(c), Error);
  c.tt_flops_per_token = 100;
  EXPECT_EQ(compare(c).e_tau_tt, 50.0 * 100);
}

TEST(Energy, Validation) {
  EnergyConfig c = gpt2(0, 1);
  EXPECT_THROW(compare(c), Error);
  c = gpt2(1, -1);
  EXPECT_THROW(compare(c), Error);
  c = gpt2(1, 1);
  c.tt_params_per_token.reset();
  EXPECT_THROW(compare(c), Error);
}

TEST(Energy, Presets) {
  EXPECT_EQ(energy_preset("paper").nu / energy_preset("paper").tau, 5.0);
  for (const auto& p : energy_presets()) {
    EXPECT_GT(p.nu, 0);
    EXPECT_GT(p.tau, 0);
  }
  EXPECT_EQ(energy_preset("pi5-low").nu, 70.0);
  EXPECT_EQ(energy_preset("pi5-high").nu, 260.0);
  EXPECT_THROW(energy_preset("tpu"), Error);
}

TEST(Energy, OmegaIsNonNegativeAndAllEnergiesNonNegative) {
  for (std::uint64_t p : {1u, 10u, 384u, 768u, 2000u}) {
    for (std::uint64_t k : {0u, 1u, 100u, 768u}) {
      for (std::uint64_t l : {0u, 1u, 50u, 4096u}) {
        EnergyConfig c = gpt2(5, 1);
        c.tt_params_per_token = p;
        c.svd_rank = k;
        c.length = l;
        const EnergyReport r = compare(c);
        for (double e : {r.e_nu, r.e_tau, r.e_nu_tt, r.e_tau_tt, r.e_nu_svd, r.e_tau_svd})
          EXPECT_GE(e, 0.0);
        EXPECT_GE(r.omega_tt, 0.0);
        EXPECT_GE(r.omega_svd, 0.0);
      }
    }
  }
}

TEST(Energy, CsvLayout) {
  const EnergyConfig c = gpt2(5, 1);
  EXPECT_EQ(energy_csv_header(),
            "V,d,l,p,k,nu,tau,mode,E_nu,E_tau,E_nu_tt,E_tau_tt,E_nu_svd,E_tau_svd,omega_tt,omega_svd");
  const std::string row = energy_csv_row(c, compare(c));
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 15);
  EXPECT_EQ(row.rfind("50257,768,50,384,192,", 0), 0u);
  EXPECT_EQ(parse_energy_mode("exact"), EnergyMode::kExactCount);
  EXPECT_EQ(mode_name(EnergyMode::kPaperFormula), "paper-formula");
}

}  // namespace
}  // namespace ttemb
