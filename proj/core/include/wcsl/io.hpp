#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "wcsl/error.hpp"
#include "wcsl/toeplitz.hpp"

namespace wcsl::io {

// Shortest-free, locale-independent decimal with 17 significant digits;
// parses back to the identical double.
std::string format_double(double value);

// Header row of column labels n<n>_k<k>, then one row per matrix row.
void write_matrix_csv(const KernelMatrix& m, std::ostream& out);
void write_matrix_csv(const KernelMatrix& m, const std::string& path);
Eigen::MatrixXd read_matrix_csv(std::istream& in);
Eigen::MatrixXd read_matrix_csv(const std::string& path);

struct TableDocument {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json rows = nlohmann::json::array();
};

// Deterministic JSON: keys sorted, floating-point numbers written with 17
// significant digits, two-space indentation.
std::string dump(const nlohmann::json& value);

nlohmann::json to_json(const TableDocument& doc);
void write_table_json(const TableDocument& doc, std::ostream& out);
void write_table_json(const TableDocument& doc, const std::string& path);

// Writes `text` to `path`, or to `fallback` when path is empty or "-".
void write_text(const std::string& text, const std::string& path, std::ostream& fallback);

struct RunConfig {
  std::optional<int> N;
  std::optional<int> N0;
  std::optional<int> K;
  int M = 50;
  std::optional<double> eta;
  std::vector<double> epsilons{0.2, 0.1, 0.05, 0.025, 0.0125};
  int grid = 721;
  int Kmax = 60;
  double tolerance = 1e-10;
  std::string output;
  std::string precision = "double";
  int threads = 0;
};

class ConfigError : public DomainError {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// Validates every field and reports all violations at once.
RunConfig parse_config(const nlohmann::json& input);
RunConfig parse_config_file(const std::string& path);
std::vector<std::string> validate(const RunConfig& config);

}  // namespace wcsl::io
