// Copyright 2026 The Crosscap Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "crosscap/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "crosscap/error.hpp"

namespace crosscap {
namespace {

std::filesystem::path TempDir() {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("crosscap_report_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Config, KeyValueFileAndOverrides) {
  const auto path = TempDir() / "run.cfg";
  {
    std::ofstream out(path);
    out << "# comment\n k = -1\nn=3\nr = 0.5  # radius\nrho-list = 0.2, 0.1\nseed=9\n";
  }
  RunConfig cfg;
  cfg.command = "embedding-report";
  ApplyKeyValues(ReadKeyValueFile(path.string()), &cfg);
  EXPECT_EQ(cfg.k, -1);
  EXPECT_EQ(cfg.n, 3);
  EXPECT_DOUBLE_EQ(cfg.r, 0.5);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.rho_list, (std::vector<double>{0.2, 0.1}));
  const RunConfig resolved = Resolve(cfg);
  EXPECT_DOUBLE_EQ(resolved.d, 0.01);
  EXPECT_DOUBLE_EQ(resolved.eta, 0.005);
  EXPECT_EQ(resolved.net, 300);
  EXPECT_NO_THROW(Validate(resolved));
}

TEST(Config, RejectsBadInput) {
  RunConfig cfg;
  EXPECT_THROW(ApplyKeyValues({{"colour", "red"}}, &cfg), Error);
  EXPECT_THROW(ApplyKeyValues({{"k", "one"}}, &cfg), Error);
  EXPECT_THROW(ParseDoubleList("0.1,,0.2"), Error);
  cfg.command = "embedding-report";
  RunConfig bad = cfg;
  bad.k = 5;
  EXPECT_THROW(Validate(Resolve(bad)), Error);
  bad = cfg;
  bad.k = 1;
  bad.r = 2.0;
  EXPECT_THROW(Validate(Resolve(bad)), Error);
  bad = cfg;
  bad.d = 0.2;
  EXPECT_THROW(Validate(Resolve(bad)), Error);
  bad = cfg;
  bad.command = "gh-report";
  bad.k = 1;
  EXPECT_THROW(Validate(Resolve(bad)), Error);
}

TEST(Config, JsonRoundTrip) {
  RunConfig cfg;
  cfg.command = "gh-report";
  cfg.rho_list = {0.2, 0.05};
  cfg.seed = 77;
  cfg = Resolve(cfg);
  const RunConfig back = RunConfigFromJson(ToJson(cfg));
  EXPECT_EQ(ToJson(back), ToJson(cfg));
  EXPECT_EQ(back.rho_list, cfg.rho_list);
  EXPECT_TRUE(ToJson(cfg).contains("rhoList"));
}

TEST(Registry, ParsesEntries) {
  const auto path = TempDir() / "thresholds.txt";
  {
    std::ofstream out(path);
    out << "# frozen values\n"
        << "tol.identity 1e-9 - abc123 fixed tolerance\n"
        << "\n"
        << "gh.C 1.96 7 abc123\n";
  }
  const ThresholdRegistry reg = ThresholdRegistry::Load(path.string());
  EXPECT_DOUBLE_EQ(reg.Get("tol.identity"), 1e-9);
  EXPECT_EQ(reg.Entry("tol.identity").note, "fixed tolerance");
  EXPECT_EQ(reg.Entry("gh.C").seed, "7");
  EXPECT_TRUE(reg.Has("gh.C"));
  EXPECT_FALSE(reg.Has("gh.D"));
  EXPECT_THROW(reg.Get("gh.D"), Error);
}

TEST(Registry, RejectsMalformedLines) {
  const auto path = TempDir() / "bad.txt";
  {
    std::ofstream out(path);
    out << "gh.C 1.96\n";
  }
  EXPECT_THROW(ThresholdRegistry::Load(path.string()), Error);
  {
    std::ofstream out(path);
    out << "gh.C 1 - x\ngh.C 2 - x\n";
  }
  EXPECT_THROW(ThresholdRegistry::Load(path.string()), Error);
  EXPECT_THROW(ThresholdRegistry::Load((TempDir() / "missing.txt").string()), Error);
}

TEST(Registry, ShippedDefaultLoads) {
  const ThresholdRegistry reg = ThresholdRegistry::LoadDefault();
  EXPECT_TRUE(reg.Has("tol.identity"));
}

TEST(Checks, Relations) {
  EXPECT_TRUE(Compare("a", 1.0, Relation::kLe, 1.0).passed);
  EXPECT_FALSE(Compare("a", 1.0, Relation::kLt, 1.0).passed);
  EXPECT_TRUE(Compare("a", 2.0, Relation::kGe, 2.0).passed);
  EXPECT_FALSE(Compare("a", 2.0, Relation::kGt, 2.0).passed);
  EXPECT_TRUE(Compare("a", 3.0, Relation::kEq, 3.0).passed);
  EXPECT_FALSE(Compare("a", std::nan(""), Relation::kLe, 1.0).passed);
  EXPECT_TRUE(Flag("b", true).passed);
}

TEST(Document, JsonShape) {
  ReportDocument doc;
  doc.command = "embedding-report";
  doc.config = nlohmann::json::object();
  doc.Add(Compare("x", 0.5, Relation::kLe, 1.0));
  doc.Add(Compare("y", std::numeric_limits<double>::infinity(), Relation::kGe, 0.0));
  doc.millis = 12.0;
  EXPECT_TRUE(doc.Passed());
  const nlohmann::json j = doc.ToJson(false);
  EXPECT_EQ(j["schemaVersion"], kSchemaVersion);
  EXPECT_EQ(j["toolVersion"], kToolVersion);
  EXPECT_EQ(j["passed"], true);
  ASSERT_EQ(j["checks"].size(), 2u);
  EXPECT_TRUE(j["checks"][1]["value"].is_string());
  EXPECT_FALSE(j.dump().find("millis") != std::string::npos);
  doc.Add(Flag("z", false));
  EXPECT_FALSE(doc.Passed());
}

TEST(Csv, QuotingAndLineEnds) {
  EXPECT_EQ(CsvField("plain"), "plain");
  EXPECT_EQ(CsvField("a,b"), "\"a,b\"");
  EXPECT_EQ(CsvField("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(CsvField("two\nlines"), "\"two\nlines\"");
  CsvTable t{{"name", "value"}, {{"x", "1"}, {"y,z", "2"}}};
  EXPECT_EQ(ToCsv(t), "name,value\r\nx,1\r\n\"y,z\",2\r\n");
}

TEST(Csv, DoublesRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) {
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  }
}

TEST(Files, AtomicWriteReplacesContent) {
  const auto path = TempDir() / "nested" / "out.json";
  WriteFileAtomic(path.string(), "first");
  WriteFileAtomic(path.string(), "second");
  EXPECT_EQ(Slurp(path), "second");
  for (const auto& entry : std::filesystem::directory_iterator(path.parent_path())) {
    EXPECT_EQ(entry.path().filename(), "out.json");
  }
}

}  // namespace
}  // namespace crosscap
