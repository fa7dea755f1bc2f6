#include <gtest/gtest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "remsim/optim.hpp"

namespace fs = std::filesystem;

namespace {

struct Out {
  int code = 0;
  std::string out;
  std::string err;
};

Out cli(std::vector<std::string> args) {
  args.insert(args.begin(), "remsim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int code = remsim::cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
  return {code, o.str(), e.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// data rows of a CSV, comment lines dropped
std::vector<std::string> rows(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  fs::path dir;
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("remsim_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::vector<std::string> quick(std::vector<std::string> extra = {}) {
    std::vector<std::string> a{"-O", "iterations=1", "-O", "horizon_ms=30", "-O", "threads=1"};
    a.insert(a.end(), extra.begin(), extra.end());
    return a;
  }
};

}  // namespace

TEST_F(CliTest, RunWritesSummaryWithSeed) {
  auto args = std::vector<std::string>{"run", "-o", (dir / "a").string(), "-O", "seed=7", "--rem-reports"};
  for (auto& q : quick()) args.push_back(q);
  const auto r = cli(args);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(dir / "a" / "summary.json"));
  EXPECT_EQ(j["seed"], 7);
  EXPECT_EQ(j["scheme"], "dynamic");
  EXPECT_EQ(j["iterations"], 1);
  for (const char* f : {"ue_rates.csv", "cdf_outdoor.csv", "cdf_indoor.csv", "rem_reports.csv"})
    EXPECT_TRUE(fs::exists(dir / "a" / f)) << f;
  EXPECT_EQ(slurp(dir / "a" / "ue_rates.csv").rfind("# config_hash=", 0), 0u);
}

TEST_F(CliTest, OverrideSchemeIsRecorded) {
  auto args = std::vector<std::string>{"run", "-o", dir.string(), "-O", "scheme=modified_lsa"};
  for (auto& q : quick()) args.push_back(q);
  ASSERT_EQ(cli(args).code, 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(dir / "summary.json"))["scheme"], "modified_lsa");
}

TEST_F(CliTest, RunTwiceIsByteIdentical) {
  for (const char* sub : {"a", "b"}) {
    auto args = std::vector<std::string>{"run", "-o", (dir / sub).string()};
    for (auto& q : quick()) args.push_back(q);
    ASSERT_EQ(cli(args).code, 0);
  }
  for (const char* f : {"ue_rates.csv", "cdf_outdoor.csv", "cdf_indoor.csv", "summary.json"})
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
}

TEST_F(CliTest, ConfigFileAndShowConfig) {
  const auto r = cli({"show-config", "-c", std::string(REMSIM_CONFIG_DIR) + "/desk.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"iterations\": 20"), std::string::npos);
  EXPECT_NE(r.out.find("# config_hash="), std::string::npos);
}

TEST_F(CliTest, SweepSingleGamma) {
  auto args = std::vector<std::string>{"sweep", "-o", dir.string(), "--gammas", "-20", "-O", "scheme=semi_static"};
  for (auto& q : quick()) args.push_back(q);
  const auto r = cli(args);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = rows(dir / "sweep.csv");
  ASSERT_EQ(lines.size(), 3u);  // header, baseline, one margin
  EXPECT_EQ(lines[0], "gamma_db,outdoor_p10_bps,degradation_pct,mean_indoor_power_mw,mean_indoor_rate_bps");
  EXPECT_EQ(lines[1].rfind(",", 0), 0u);
  EXPECT_EQ(lines[2].rfind("-20,", 0), 0u);
}

TEST_F(CliTest, SweepPowerColumnMonotone) {
  auto args = std::vector<std::string>{"sweep", "-o", dir.string(), "-O", "scheme=semi_static_area"};
  for (auto& q : quick()) args.push_back(q);
  ASSERT_EQ(cli(args).code, 0);
  const auto lines = rows(dir / "sweep.csv");
  ASSERT_EQ(lines.size(), 9u);
  double prev = 1e300;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    std::vector<std::string> f;
    std::stringstream ss(lines[i]);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    const double p = std::stod(f[3]);
    EXPECT_LE(p, prev * (1 + 1e-12));
    prev = p;
  }
}

TEST_F(CliTest, CompareOffAndDuplicates) {
  auto args = std::vector<std::string>{"compare", "-o", dir.string(), "--schemes", "off,cbrs,cbrs"};
  for (auto& q : quick()) args.push_back(q);
  ASSERT_EQ(cli(args).code, 0);
  EXPECT_TRUE(fs::exists(dir / "cdf_cbrs_indoor.csv"));
  EXPECT_EQ(rows(dir / "compare.csv").size(), 7u);

  // off equals an indoor-off run
  auto base = std::vector<std::string>{"run", "-o", (dir / "base").string(), "-O", "indoor_enabled=false", "-O",
                                       "scheme=off"};
  for (auto& q : quick()) base.push_back(q);
  ASSERT_EQ(cli(base).code, 0);
  EXPECT_EQ(rows(dir / "cdf_off_outdoor.csv"), rows(dir / "base" / "cdf_outdoor.csv"));

  // the two cbrs runs share seeds, so their summary rows match
  const auto cmp = rows(dir / "compare.csv");
  EXPECT_EQ(cmp[3], cmp[5]);
  EXPECT_EQ(cmp[4], cmp[6]);
}

TEST_F(CliTest, OracleSubcommand) {
  fs::create_directories(dir);
  remsim::PowerProblem pr;
  pr.w = Eigen::MatrixXd::Ones(1, 2);
  pr.i_max = Eigen::VectorXd::Ones(1);
  pr.p_max = 125.9;
  pr.goal = remsim::Goal::sum_power;
  remsim::write_problem(pr, dir / "p.txt");
  const auto r = cli({"oracle", (dir / "p.txt").string(), "--goal", "max_min"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["goal"], "max_min");
  EXPECT_NEAR(j["solver"]["objective"].get<double>(), 0.5, 1e-9);
  EXPECT_TRUE(j["solver"]["feasible"].get<bool>());
  EXPECT_LT(std::abs(j["relative_gap"].get<double>()), 1e-3);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
  EXPECT_EQ(cli({"run", "-o", dir.string(), "-O", "iterations=x"}).code, 2);
  EXPECT_NE(cli({"run", "-o", dir.string(), "-O", "iterations=x"}).err.find("/iterations"), std::string::npos);
  EXPECT_EQ(cli({"run", "-c", "/nonexistent.json"}).code, 2);
  EXPECT_EQ(cli({"sweep", "-o", dir.string(), "-O", "scheme=dynamic"}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);

  fs::create_directories(dir);
  {
    std::ofstream f(dir / "bad.json");
    f << "{\n  \"schema_version\": 1,\n  \"iterations\": ,\n}\n";
  }
  const auto r = cli({"run", "-c", (dir / "bad.json").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("bad.json:3:"), std::string::npos) << r.err;
}
