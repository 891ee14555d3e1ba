#include "wcsl/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "wcsl/version.hpp"

namespace wcsl::io {
namespace {

using nlohmann::json;

void dump_into(const json& value, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (value.type()) {
    case json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = value.begin(); it != value.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + json(it.key()).dump() + ": ";
        dump_into(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        dump_into(value[i], out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = value.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      return;
    }
    default:
      out += value.dump();
  }
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing", path);
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("failed writing " + path, path);
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_matrix_csv(const KernelMatrix& m, std::ostream& out) {
  const Eigen::Index dim = m.dimension();
  std::string text;
  for (Eigen::Index c = 0; c < dim; ++c) {
    if (c) text += ',';
    text += "n" + std::to_string(c / m.K) + "_k" + std::to_string(c % m.K + 1);
  }
  text += '\n';
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      if (c) text += ',';
      text += format_double(m.dense(r, c));
    }
    text += '\n';
  }
  out << text;
}

void write_matrix_csv(const KernelMatrix& m, const std::string& path) {
  auto out = open_for_write(path);
  write_matrix_csv(m, out);
  finish(out, path);
}

Eigen::MatrixXd read_matrix_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty matrix CSV", "");
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p < end) {
      double v = 0.0;
      const auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc()) throw IoError("malformed number in matrix CSV: " + line, "");
      row.push_back(v);
      p = res.ptr;
      if (p < end && *p == ',') ++p;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw IoError("ragged matrix CSV", "");
    }
    rows.push_back(std::move(row));
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path, path);
  try {
    return read_matrix_csv(in);
  } catch (const IoError& e) {
    throw IoError(std::string(e.what()) + " (" + path + ")", path);
  }
}

std::string dump(const nlohmann::json& value) {
  std::string out;
  dump_into(value, out, 0);
  out += '\n';
  return out;
}

nlohmann::json to_json(const TableDocument& doc) {
  json meta;
  meta["command"] = doc.command;
  meta["parameters"] = doc.parameters;
  meta["tool_version"] = kVersion;
  json root;
  root["metadata"] = meta;
  root["rows"] = doc.rows.is_null() ? json::array() : doc.rows;
  return root;
}

void write_table_json(const TableDocument& doc, std::ostream& out) { out << dump(to_json(doc)); }

void write_table_json(const TableDocument& doc, const std::string& path) {
  auto out = open_for_write(path);
  write_table_json(doc, out);
  finish(out, path);
}

void write_text(const std::string& text, const std::string& path, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    return;
  }
  auto out = open_for_write(path);
  out << text;
  finish(out, path);
}

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string s;
  for (const auto& item : items) s += (s.empty() ? "" : "; ") + item;
  return s;
}

template <typename T>
void read_field(const json& input, const char* key, T& target, std::vector<std::string>& errors) {
  if (!input.contains(key)) return;
  try {
    target = input.at(key).get<T>();
  } catch (const json::exception&) {
    errors.push_back(std::string(key) + ": wrong type");
  }
}

template <typename T>
void read_optional(const json& input, const char* key, std::optional<T>& target,
                   std::vector<std::string>& errors) {
  if (!input.contains(key)) return;
  T value{};
  try {
    value = input.at(key).get<T>();
    target = value;
  } catch (const json::exception&) {
    errors.push_back(std::string(key) + ": wrong type");
  }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : DomainError("invalid configuration: " + join(violations)), violations_(std::move(violations)) {}

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> v;
  auto num = [](double x) { return format_double(x); };
  if (c.N && *c.N < 0) v.push_back("N: must be >= 0 (got " + std::to_string(*c.N) + ")");
  if (c.K && *c.K < 1) v.push_back("K: must be >= 1 (got " + std::to_string(*c.K) + ")");
  if (c.M < 1) v.push_back("M: must be >= 1 (got " + std::to_string(c.M) + ")");
  if (c.grid < 3) v.push_back("grid: must be >= 3 (got " + std::to_string(c.grid) + ")");
  if (c.Kmax < 1) v.push_back("Kmax: must be >= 1 (got " + std::to_string(c.Kmax) + ")");
  if (!(c.tolerance > 0.0)) v.push_back("tolerance: must be > 0 (got " + num(c.tolerance) + ")");
  if (c.threads < 0) v.push_back("threads: must be >= 0 (got " + std::to_string(c.threads) + ")");
  if (c.eta && !(*c.eta > std::sqrt(2.0) - 1.0 && *c.eta < 1.0)) {
    v.push_back("eta: must lie in the open interval (sqrt2 - 1, 1) (got " + num(*c.eta) + ")");
  }
  if (c.epsilons.empty()) v.push_back("epsilons: must not be empty");
  for (double e : c.epsilons) {
    if (!(e > 0.0 && e < 0.5)) v.push_back("epsilons: each must lie in (0, 1/2) (got " + num(e) + ")");
  }
  if (c.precision != "double") {
    v.push_back("precision: only \"double\" is supported (got \"" + c.precision + "\")");
  }
  return v;
}

RunConfig parse_config(const nlohmann::json& input) {
  std::vector<std::string> errors;
  if (!input.is_object()) throw ConfigError({"config: must be a JSON object"});
  static const std::set<std::string> known{"N", "N0", "K", "M", "eta", "epsilons", "grid", "Kmax",
                                           "tolerance", "output", "precision", "threads"};
  for (auto it = input.begin(); it != input.end(); ++it) {
    if (!known.count(it.key())) errors.push_back(it.key() + ": unknown field");
  }
  RunConfig c;
  read_optional(input, "N", c.N, errors);
  read_optional(input, "N0", c.N0, errors);
  read_optional(input, "K", c.K, errors);
  read_field(input, "M", c.M, errors);
  read_optional(input, "eta", c.eta, errors);
  read_field(input, "epsilons", c.epsilons, errors);
  read_field(input, "grid", c.grid, errors);
  read_field(input, "Kmax", c.Kmax, errors);
  read_field(input, "tolerance", c.tolerance, errors);
  read_field(input, "output", c.output, errors);
  read_field(input, "precision", c.precision, errors);
  read_field(input, "threads", c.threads, errors);
  for (auto& e : validate(c)) errors.push_back(std::move(e));
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return c;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path, path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError({std::string("config: not valid JSON (") + e.what() + ")"});
  }
  return parse_config(j);
}

}  // namespace wcsl::io
