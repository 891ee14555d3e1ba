#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "reference_tables.hpp"
#include "wcsl/cli/cli.hpp"
#include "wcsl/io.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = wcsl::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("wcsl_cli_test_" + name);
}

// Half a unit in the third significant figure.
double half_unit(double printed) {
  const double e = std::floor(std::log10(std::abs(printed)));
  return 0.5 * std::pow(10.0, e - 2.0);
}

}  // namespace

TEST(Cli, MatrixMatchesPrintedTable) {
  const Outcome r = call({"matrix", "2", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  const Eigen::MatrixXd m = wcsl::io::read_matrix_csv(in);
  ASSERT_EQ(m.rows(), 9);
  ASSERT_EQ(m.cols(), 9);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      const double p = wcsl::cli::kTableA23[static_cast<std::size_t>(9 * i + j)];
      EXPECT_NEAR(m(i, j), p, half_unit(p) + 1e-15) << i << "," << j;
    }
}

TEST(Cli, FourierTableMatchesPrinted) {
  const Outcome r = call({"table2", "20"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["metadata"]["command"], "table2");
  ASSERT_EQ(j["rows"].size(), 20u);
  for (std::size_t i = 0; i < 20; ++i) {
    EXPECT_EQ(j["rows"][i]["K"], static_cast<int>(i) + 1);
    EXPECT_NEAR(j["rows"][i]["lambda_max"].get<double>(), wcsl::cli::kTableFourier[i], 5e-7);
  }
}

TEST(Cli, ChshRowAndDomainError) {
  const Outcome ok = call({"chsh", "--eta", "0.45", "--N", "40", "--K", "1"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  const json row = json::parse(ok.out)["rows"][0];
  EXPECT_LT(row["max_residual"].get<double>(), 1e-8);
  EXPECT_GT(row["correlator"].get<double>(), 2.0);

  const Outcome bad = call({"chsh", "--eta", "2.0", "--N", "20", "--K", "2"});
  EXPECT_NE(bad.code, 0);
  const json e = json::parse(bad.err);
  EXPECT_EQ(e["error"]["kind"], "domain_error");
  EXPECT_NE(e["error"]["message"].get<std::string>().find("eta"), std::string::npos);
}

TEST(Cli, InfeasibleReportsLargestEta) {
  const Outcome r = call({"chsh", "--eta", "0.9", "--N", "20", "--K", "3"});
  EXPECT_EQ(r.code, 1);
  const json e = json::parse(r.err);
  EXPECT_EQ(e["error"]["kind"], "infeasible");
  EXPECT_TRUE(e["error"].contains("feasible_eta_max"));
}

TEST(Cli, RequiredFlagsAreListedTogether) {
  const Outcome r = call({"chsh", "--eta", "0.7"});
  EXPECT_NE(r.code, 0);
  const std::string msg = json::parse(r.err)["error"]["message"];
  EXPECT_NE(msg.find("N: required"), std::string::npos);
  EXPECT_NE(msg.find("K: required"), std::string::npos);
  const Outcome z = call({"matrix", "0", "0"});
  EXPECT_EQ(z.code, 1);
  EXPECT_NE(z.err.find("K:"), std::string::npos);
}

TEST(Cli, OutputFilesAreByteIdentical) {
  const auto a = temp_path("a.json");
  const auto b = temp_path("b.json");
  ASSERT_EQ(call({"--out", a.string(), "bounds", "6"}).code, 0);
  ASSERT_EQ(call({"-o", b.string(), "bounds", "6"}).code, 0);
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));
  const json j = json::parse(slurp(a));
  EXPECT_EQ(j["rows"].size(), 7u);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(Cli, HelpAndUsageErrors) {
  const Outcome h = call({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("matrix"), std::string::npos);
  EXPECT_EQ(call({}).code, 2);
  const Outcome u = call({"frobnicate"});
  EXPECT_EQ(u.code, 2);
  EXPECT_EQ(json::parse(u.err)["error"]["kind"], "usage_error");
  EXPECT_EQ(call({"matrix", "two", "3"}).code, 2);
}

TEST(Cli, ThreadsFromEnvironment) {
  ::setenv("WCSL_THREADS", "lots", 1);
  const Outcome bad = call({"matrix", "1", "1"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("WCSL_THREADS"), std::string::npos);
  ::setenv("WCSL_THREADS", "2", 1);
  EXPECT_EQ(call({"matrix", "1", "1"}).code, 0);
  // An explicit flag wins over the environment.
  ::setenv("WCSL_THREADS", "lots", 1);
  EXPECT_EQ(call({"--threads", "1", "matrix", "1", "1"}).code, 0);
  ::unsetenv("WCSL_THREADS");
}

TEST(Cli, ConfigFileMergesWithFlags) {
  const auto p = temp_path("cfg.json");
  {
    std::ofstream out(p);
    out << R"({"N": 3, "K": 2})";
  }
  const Outcome from_file = call({"--config", p.string(), "spectrum", "3", "2"});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(json::parse(from_file.out)["rows"][0]["dimension"], 8);
  {
    std::ofstream out(p);
    out << R"({"M": 0, "bogus": 1})";
  }
  const Outcome bad = call({"--config", p.string(), "table2", "3"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("bogus: unknown field"), std::string::npos);
  EXPECT_NE(bad.err.find("M:"), std::string::npos);
  std::filesystem::remove(p);
}

TEST(Cli, SymbolCsv) {
  const Outcome r = call({"symbol", "2", "--t-grid", "9"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,lambda_max");
  int n = 0;
  while (std::getline(in, line)) ++n;
  EXPECT_EQ(n, 9);
  EXPECT_TRUE(r.err.empty());
}

TEST(Cli, BumpifyAcceptsCommaSeparatedEpsilons) {
  const Outcome r = call({"bumpify", "--eta", "0.45", "--eps-list", "0.2,0.1", "--N", "12", "--K", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["rows"].size(), 2u);
  EXPECT_EQ(j["metadata"]["parameters"]["epsilons"].size(), 2u);
  const Outcome bad = call({"bumpify", "--eta", "0.45", "--eps-list", "0.1,0.2", "--N", "12", "--K", "2"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(json::parse(bad.err)["error"]["kind"], "domain_error");
}
