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

#include <gtest/gtest.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ttemb/emb_file.h"
#include "ttemb/vocab_store.h"

namespace ttemb {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "ttemb");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string value_of(const std::string& kv, const std::string& key) {
  std::istringstream in(kv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + "=", 0) == 0) return line.substr(key.size() + 1);
  }
  return "";
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("ttemb_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    // 4 x 8 fixture
    fixture_ = EmbeddingTable::from_rows(
        8, {{0.5, -1.25, 2, 0.125, 3, -0.75, 1, 0.0625},
            {1, 2, 3, 4, 5, 6, 7, 8},
            {-0.3f, 0.7f, 0.11f, -0.9f, 0.25f, 0.5f, -0.125f, 1.5f},
            {0, 0, 0, 0, 0, 0, 0, 0}});
    write_emb1(file("x.emb1"), fixture_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string file(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  EmbeddingTable fixture_;
};

TEST_F(CliTest, CompressExportRoundTrip) {
  CliRun r = run({"compress", "--input", file("x.emb1"), "--output", file("v.tte1"), "--eps", "0",
               "--shape", "2,2,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(value_of(r.out, "V"), "4");
  EXPECT_FALSE(value_of(r.out, "eta").empty());
  EXPECT_FALSE(value_of(r.out, "eta_emb").empty());
  EXPECT_FALSE(value_of(r.out, "total_params").empty());
  r = run({"export-dense", "--vocab", file("v.tte1"), "--output", file("y.emb1")});
  ASSERT_EQ(r.code, 0) << r.err;
  const EmbeddingTable y = read_emb1(file("y.emb1"));
  ASSERT_EQ(y.values.size(), fixture_.values.size());
  for (std::size_t i = 0; i < y.values.size(); ++i) {
    EXPECT_NEAR(y.values[i], fixture_.values[i], 4e-7 * (1 + std::abs(fixture_.values[i])));
  }
}

TEST_F(CliTest, PlanShape) {
  const CliRun r = run({"plan-shape", "--d", "27", "--policy", "max"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "3,3,3 params 9 eta 2.0\n");
  const CliRun o = run({"plan-shape", "--d", "768", "--policy", "order:3", "--rank", "4"});
  EXPECT_EQ(o.out, "8,8,12 params 208 eta 2.6923076923076925\n");
}

TEST_F(CliTest, TokenLifecycle) {
  ASSERT_EQ(run({"compress", "--input", file("x.emb1"), "--output", file("v.tte1"), "--shape",
                 "2,4", "--eps", "0.01"}).code, 0);
  const auto before = read_emb1(file("x.emb1"));
  std::ifstream f0(file("v.tte1"), std::ios::binary);
  const std::string bytes0((std::istreambuf_iterator<char>(f0)), {});

  CliRun r = run({"add-token", "--vocab", file("v.tte1"), "--id", "50258", "--embedding",
               file("x.emb1"), "--row", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(CompressedVocab::load(file("v.tte1")).size(), 5u);
  r = run({"add-token", "--vocab", file("v.tte1"), "--id", "50258", "--embedding", file("x.emb1")});
  EXPECT_EQ(r.code, kExitNumeric);
  EXPECT_NE(r.err.find("DuplicateToken"), std::string::npos);

  r = run({"reconstruct", "--vocab", file("v.tte1"), "--ids", "50258,0", "--output", file("r.emb1")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_emb1(file("r.emb1")).vocab, 2u);

  r = run({"rm-token", "--vocab", file("v.tte1"), "--id", "50258"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream f1(file("v.tte1"), std::ios::binary);
  const std::string bytes1((std::istreambuf_iterator<char>(f1)), {});
  EXPECT_EQ(bytes1, bytes0);

  r = run({"rm-token", "--vocab", file("v.tte1"), "--id", "13"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("TokenNotFound"), std::string::npos);
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST_F(CliTest, StatsReportsHistogramAndBaseline) {
  ASSERT_EQ(run({"compress", "--input", file("x.emb1"), "--output", file("v.tte1"), "--shape",
                 "2,2,2"}).code, 0);
  const CliRun r = run({"stats", "--vocab", file("v.tte1"), "--dense", file("x.emb1"), "--svd-k", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(value_of(r.out, "rank_histogram").empty());
  EXPECT_EQ(value_of(r.out, "lrt1.k"), "2");
  EXPECT_FALSE(value_of(r.out, "tt.rms_row_error").empty());
  const CliRun p = run({"stats", "--vocab", file("v.tte1"), "--pretty"});
  EXPECT_EQ(p.out.find('='), std::string::npos);
}

TEST_F(CliTest, EnergyCsv) {
  const CliRun r = run({"energy", "--preset", "pi5-mid", "--V", "50257", "--d", "768", "--l", "50",
                     "--p", "384", "--k", "192"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header.rfind("V,d,l,p,k,", 0), 0u);
  EXPECT_EQ(row.rfind("50257,768,50,384,192,", 0), 0u);
  EXPECT_EQ(run({"energy", "--preset", "nope", "--p", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"energy"}).code, kExitUsage);
}

TEST_F(CliTest, BenchCsv) {
  const CliRun r = run({"bench", "--suite", "all", "--d", "27", "--V", "6", "--reps", "2",
                     "--shape", "3,3,3", "--max-rank", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("op,shape,ranks,eps,d,V,l,reps,mean,std,flops_per_token\n", 0), 0u);
  EXPECT_NE(r.out.find("reconstruct,3x3x3,1:1:1:1,0.0,27,6,0,2,"), std::string::npos);
  EXPECT_NE(r.out.find(",72\n"), std::string::npos);
  EXPECT_NE(r.out.find("svd_lookup"), std::string::npos);
}

TEST_F(CliTest, ErrorsMapToExitCodes) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"compress", "--input", file("x.emb1")}).code, kExitUsage);
  EXPECT_EQ(run({"stats", "--vocab", file("missing.tte1")}).code, kExitIo);
  std::ofstream(file("junk.tte1")) << "not a store";
  EXPECT_EQ(run({"stats", "--vocab", file("junk.tte1")}).code, kExitFormat);
  EXPECT_EQ(run({"compress", "--input", file("x.emb1"), "--output", file("v.tte1"), "--shape", "3,3"})
                .code,
            kExitNumeric);
}

TEST_F(CliTest, HelpListsFlags) {
  const CliRun r = run({"compress", "--help"});
  EXPECT_EQ(r.code, 0);
  for (const char* flag : {"--input", "--output", "--shape", "--auto-shape", "--eps", "--max-rank",
                           "--threads", "--config", "--pretty"}) {
    EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
  }
}

TEST_F(CliTest, ConfigFileAndEnvironment) {
  std::ofstream(file("plan.cfg")) << "d=27\npolicy=max\n";
  CliRun r = run({"plan-shape", "--config", file("plan.cfg")});
  EXPECT_EQ(r.out, "3,3,3 params 9 eta 2.0\n") << r.err;
  ::setenv("TTEMB_D", "16", 1);
  r = run({"plan-shape"});
  ::unsetenv("TTEMB_D");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "2,2,2,2 params 8 eta 1.0\n");
  // command line beats the file
  r = run({"plan-shape", "--config", file("plan.cfg"), "--d", "8"});
  EXPECT_EQ(r.out, "2,2,2 params 6 eta 0.33333333333333326\n") << r.err;
  std::ofstream(file("stats.cfg")) << "# comment\npretty = true\n";
  ASSERT_EQ(run({"compress", "--input", file("x.emb1"), "--output", file("v.tte1"), "--shape",
                 "2,4"}).code, 0);
  r = run({"stats", "--vocab", file("v.tte1"), "--config", file("stats.cfg")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.find('='), std::string::npos);
  std::ofstream(file("bad.cfg")) << "d 27\n";
  EXPECT_EQ(run({"plan-shape", "--config", file("bad.cfg")}).code, kExitUsage);
  EXPECT_EQ(run({"plan-shape", "--config", file("none.cfg")}).code, kExitIo);
}

TEST_F(CliTest, Metrics) {
  std::ofstream(file("a.txt")) << "-0.5\n-1\n";
  std::ofstream(file("b.txt")) << "-1\n-1\n";
  const CliRun r = run({"metrics", "--before", file("a.txt"), "--after", file("b.txt"), "--eta-emb", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(value_of(r.out, "ln_ppl_before"), "1.5");
  EXPECT_EQ(value_of(r.out, "delta_ln_ppl"), "0.5");
}

}  // namespace
}  // namespace ttemb
