#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "wcsl/error.hpp"
#include "wcsl/io.hpp"
#include "wcsl/toeplitz.hpp"

using namespace wcsl;
using nlohmann::json;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("wcsl_io_test_" + name);
}

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
  for (const auto& s : v)
    if (s.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(FormatDouble, RoundTripsRandomBits) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20000; ++i) {
    std::uint64_t bits = rng();
    double x;
    std::memcpy(&x, &bits, sizeof x);
    if (!std::isfinite(x)) continue;
    const std::string s = io::format_double(x);
    EXPECT_EQ(std::strtod(s.c_str(), nullptr), x) << s;
  }
  EXPECT_EQ(io::format_double(0.5), "0.5");
  EXPECT_EQ(std::stod(io::format_double(-0.0)), 0.0);
}

TEST(MatrixCsv, RoundTripAndHeader) {
  const KernelMatrix m = assemble(3, 2);
  std::stringstream ss;
  io::write_matrix_csv(m, ss);
  std::string header;
  std::getline(ss, header);
  EXPECT_EQ(header, "n0_k1,n0_k2,n1_k1,n1_k2,n2_k1,n2_k2,n3_k1,n3_k2");
  ss.seekg(0);
  const Eigen::MatrixXd back = io::read_matrix_csv(ss);
  EXPECT_EQ(back, m.dense);

  const auto p = temp_path("m.csv");
  io::write_matrix_csv(m, p.string());
  EXPECT_EQ(io::read_matrix_csv(p.string()), m.dense);
  std::filesystem::remove(p);
}

TEST(MatrixCsv, MalformedInput) {
  std::istringstream empty("");
  EXPECT_THROW(io::read_matrix_csv(empty), IoError);
  std::istringstream bad("a,b\n1,x\n");
  EXPECT_THROW(io::read_matrix_csv(bad), IoError);
  std::istringstream ragged("a,b\n1,2\n3\n");
  EXPECT_THROW(io::read_matrix_csv(ragged), IoError);
  EXPECT_THROW(io::read_matrix_csv(std::string("/nonexistent/dir/m.csv")), IoError);
}

TEST(Json, DeterministicDumpAndNonFinite) {
  json a = {{"b", 0.1}, {"a", 1}, {"c", {3.0, std::numeric_limits<double>::quiet_NaN()}}};
  json b;
  b["c"] = json::array({3.0, std::numeric_limits<double>::infinity()});
  b["a"] = 1;
  b["b"] = 0.1;
  const std::string da = io::dump(a);
  EXPECT_EQ(da, io::dump(b));
  EXPECT_LT(da.find("\"a\""), da.find("\"b\""));
  EXPECT_NE(da.find("null"), std::string::npos);
  const json back = json::parse(da);
  EXPECT_EQ(back["b"].get<double>(), 0.1);
  EXPECT_TRUE(back["c"][1].is_null());
}

TEST(Json, TableDocumentMetadata) {
  io::TableDocument doc;
  doc.command = "bounds";
  doc.parameters = {{"N", 4}};
  const json j = io::to_json(doc);
  EXPECT_EQ(j["metadata"]["command"], "bounds");
  EXPECT_EQ(j["metadata"]["parameters"]["N"], 4);
  EXPECT_TRUE(j["metadata"].contains("tool_version"));
  EXPECT_TRUE(j["rows"].is_array());
  EXPECT_TRUE(j["rows"].empty());
  std::ostringstream os;
  io::write_table_json(doc, os);
  EXPECT_TRUE(json::accept(os.str()));
}

TEST(WriteText, FileAndFallback) {
  std::ostringstream os;
  io::write_text("hello\n", "", os);
  io::write_text("again\n", "-", os);
  EXPECT_EQ(os.str(), "hello\nagain\n");
  const auto p = temp_path("t.txt");
  std::ostringstream unused;
  io::write_text("file\n", p.string(), unused);
  EXPECT_TRUE(unused.str().empty());
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "file");
  std::filesystem::remove(p);
  EXPECT_THROW(io::write_text("x", "/nonexistent/dir/t.txt", unused), IoError);
}

TEST(Config, Defaults) {
  const io::RunConfig c = io::parse_config(json::object());
  EXPECT_EQ(c.M, 50);
  EXPECT_EQ(c.grid, 721);
  EXPECT_EQ(c.Kmax, 60);
  EXPECT_FALSE(c.N.has_value());
  EXPECT_EQ(c.epsilons.size(), 5u);
  EXPECT_EQ(c.precision, "double");
}

TEST(Config, ViolationsNameTheField) {
  try {
    io::parse_config({{"K", 0}});
    FAIL();
  } catch (const io::ConfigError& e) {
    ASSERT_EQ(e.violations().size(), 1u);
    EXPECT_EQ(e.violations()[0].rfind("K:", 0), 0u);
    EXPECT_STREQ(e.kind(), DomainError("").kind());
  }
  try {
    io::parse_config({{"eta", 1.5}});
    FAIL();
  } catch (const io::ConfigError& e) {
    EXPECT_TRUE(mentions(e.violations(), "sqrt2 - 1, 1"));
    EXPECT_TRUE(mentions(e.violations(), "1.5"));
  }
}

TEST(Config, CollectsEveryViolation) {
  try {
    io::parse_config({{"N", -1}, {"K", 0}, {"M", "fifty"}, {"bogus", true}, {"epsilons", {0.1, 0.7}}});
    FAIL();
  } catch (const io::ConfigError& e) {
    EXPECT_EQ(e.violations().size(), 5u);
    EXPECT_TRUE(mentions(e.violations(), "N:"));
    EXPECT_TRUE(mentions(e.violations(), "K:"));
    EXPECT_TRUE(mentions(e.violations(), "M: wrong type"));
    EXPECT_TRUE(mentions(e.violations(), "bogus: unknown field"));
    EXPECT_TRUE(mentions(e.violations(), "epsilons:"));
  }
  EXPECT_THROW(io::parse_config(json::array()), io::ConfigError);
  EXPECT_THROW(io::parse_config({{"precision", "quad"}}), io::ConfigError);
}

TEST(Config, Files) {
  EXPECT_THROW(io::parse_config_file("/nonexistent/cfg.json"), IoError);
  const auto p = temp_path("cfg.json");
  {
    std::ofstream out(p);
    out << "{ \"N\": 3, ";
  }
  EXPECT_THROW(io::parse_config_file(p.string()), io::ConfigError);
  {
    std::ofstream out(p);
    out << R"({"N": 3, "K": 2, "eta": 0.7})";
  }
  const io::RunConfig c = io::parse_config_file(p.string());
  EXPECT_EQ(*c.N, 3);
  EXPECT_EQ(*c.K, 2);
  EXPECT_DOUBLE_EQ(*c.eta, 0.7);
  std::filesystem::remove(p);
}
