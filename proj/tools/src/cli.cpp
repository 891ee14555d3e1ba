#include "wcsl/cli/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wcsl/bump_quadrature.hpp"
#include "wcsl/chsh.hpp"
#include "wcsl/cli/acceptance.hpp"
#include "wcsl/error.hpp"
#include "wcsl/io.hpp"
#include "wcsl/kernel.hpp"
#include "wcsl/numeric/parallel.hpp"
#include "wcsl/szego.hpp"
#include "wcsl/toeplitz.hpp"
#include "wcsl/version.hpp"

namespace wcsl::cli {
namespace {

using nlohmann::json;

json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json vector_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json function_json(const TestFunction& f) {
  return {{"side", f.side == Side::alice ? "alice" : "bob"},
          {"comp1", f.comp1},
          {"comp2", f.comp2}};
}

json index_json(const TestFunction& f) {
  json a = json::array();
  for (std::size_t i = 0; i < f.comp1.size(); ++i) {
    const WaveletIndex w = f.index(i);
    a.push_back({w.n, w.k});
  }
  return a;
}

json spectrum_row(const KernelMatrix& m, const SpectralResult& s) {
  return {{"dimension", m.dimension()},
          {"lambda_max", s.lambda_max},
          {"lambda_min", s.lambda_min},
          {"residual_max", s.residual_max},
          {"residual_min", s.residual_min},
          {"norm", s.norm},
          {"iterative", s.iterative}};
}

json chsh_row(const ChshRun& run) {
  const ChshSolution& s = run.solution;
  const ResidualReport& r = run.report;
  json products = json::object();
  const char* names[] = {"f_g", "fp_g", "f_gp", "fp_gp"};
  for (int i = 0; i < 4; ++i) products[names[i]] = complex_json(r.products[static_cast<std::size_t>(i)]);
  return {{"eta", s.eta},
          {"c", s.c},
          {"theta", s.theta},
          {"target", target(s.eta)},
          {"lambda_max", run.spectrum.lambda_max},
          {"lambda_min", run.spectrum.lambda_min},
          {"feasible_eta_max", feasible_eta_max(run.spectrum)},
          {"correlator_formula", correlator(s.eta)},
          {"correlator", r.correlator},
          {"norms", r.norms},
          {"products", products},
          {"residuals", r.residuals},
          {"max_residual", r.max_residual},
          {"y", vector_json(s.y)},
          {"index", {{"alice", index_json(s.f)}, {"bob", index_json(s.g)}}},
          {"functions",
           {{"f", function_json(s.f)},
            {"fp", function_json(s.fp)},
            {"g", function_json(s.g)},
            {"gp", function_json(s.gp)}}}};
}

json bump_row(const BumpRecord& r, double eta, double lambda_max) {
  return {{"epsilon", r.epsilon},
          {"a", r.constants.a},
          {"ap", r.constants.ap},
          {"b", r.constants.b},
          {"bp", r.constants.bp},
          {"ip_f_g", complex_json(r.ip_fg)},
          {"ip_fp_g", complex_json(r.ip_fpg)},
          {"ip_f_gp", complex_json(r.ip_fgp)},
          {"ip_fp_gp", complex_json(r.ip_fpgp)},
          {"rescaled_f_g", complex_json(r.rs_fg)},
          {"rescaled_fp_g", complex_json(r.rs_fpg)},
          {"rescaled_f_gp", complex_json(r.rs_fgp)},
          {"rescaled_fp_gp", complex_json(r.rs_fpgp)},
          {"target_f_g", complex_json({0.0, -inner_product_magnitude(eta)})},
          {"deviation_f_g", r.deviation_fg},
          {"correlator", r.correlator_num},
          {"quadrature_error", r.error},
          {"lambda_max", lambda_max}};
}

json error_payload(const Error& e) {
  json body = {{"kind", e.kind()}, {"message", e.what()}};
  if (auto* c = dynamic_cast<const io::ConfigError*>(&e)) body["violations"] = c->violations();
  if (auto* c = dynamic_cast<const ResourceError*>(&e)) body["cap"] = c->cap();
  if (auto* c = dynamic_cast<const NumericalError*>(&e)) body["last_residual"] = c->last_residual();
  if (auto* c = dynamic_cast<const AccuracyError*>(&e)) body["estimate"] = c->estimate();
  if (auto* c = dynamic_cast<const InfeasibleError*>(&e)) body["feasible_eta_max"] = c->feasible_eta_max();
  if (auto* c = dynamic_cast<const AnomalyError*>(&e)) body["value"] = c->value();
  if (auto* c = dynamic_cast<const IoError*>(&e)) body["path"] = c->path();
  return {{"error", body}};
}

json read_config_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path, path);
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::exception& e) {
    throw io::ConfigError({std::string("config: not valid JSON (") + e.what() + ")"});
  }
}

// Per-invocation flag storage; values are copied into a JSON object so the
// library's config validation sees flags and file settings the same way.
struct Flags {
  std::string config;
  std::string output;
  int threads = 0;
  int N = 0, N0 = 0, K = 0, M = 0, grid = 0, Kmax = 0;
  double eta = 0.0;
  std::vector<double> epsilons;
  std::vector<int> criteria;
};

void put(json& j, const char* key, CLI::Option* opt, const auto& value) {
  if (opt != nullptr && opt->count() > 0) j[key] = value;
}

io::RunConfig resolve(const json& input, const std::vector<std::string>& required) {
  std::vector<std::string> violations;
  io::RunConfig cfg;
  try {
    cfg = io::parse_config(input);
  } catch (const io::ConfigError& e) {
    violations = e.violations();
  }
  for (const auto& key : required) {
    if (!input.contains(key)) violations.push_back(key + ": required");
  }
  if (!violations.empty()) throw io::ConfigError(std::move(violations));
  return cfg;
}

void emit(const std::string& text, const io::RunConfig& cfg, std::ostream& out) {
  io::write_text(text, cfg.output, out);
}

std::string document(const std::string& command, json parameters, json rows) {
  io::TableDocument doc{command, std::move(parameters), std::move(rows)};
  std::ostringstream s;
  io::write_table_json(doc, s);
  return s.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wavelet kernel matrices, Szego symbols and CHSH test functions", "wcsl"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1, 1);
  Flags fl;
  CLI::Option* threads_opt =
      app.add_option("--threads", fl.threads, "Worker thread cap (0 = hardware; env WCSL_THREADS)")
          ->check(CLI::NonNegativeNumber);
  CLI::Option* config_opt = app.add_option("--config", fl.config, "JSON run configuration");
  CLI::Option* output_opt = app.add_option("-o,--out", fl.output, "Output path ('-' = stdout)");

  auto* matrix = app.add_subcommand("matrix", "A(N,K) as CSV");
  CLI::Option* mN = matrix->add_option("N", fl.N, "Largest scale index")->required();
  CLI::Option* mK = matrix->add_option("K", fl.K, "Translations per scale")->required();

  auto* spectrum = app.add_subcommand("spectrum", "Extremal eigenpairs of A(N,K) as JSON");
  CLI::Option* sN = spectrum->add_option("N", fl.N)->required();
  CLI::Option* sK = spectrum->add_option("K", fl.K)->required();

  auto* bounds = app.add_subcommand("bounds", "K=1 sandwich bounds and the M_N ladder");
  CLI::Option* bN = bounds->add_option("N", fl.N)->required();

  auto* symbol = app.add_subcommand("symbol", "lambda_max(F_K(t)) on a uniform grid of [0, 2pi] as CSV");
  CLI::Option* yK = symbol->add_option("K", fl.K)->required();
  CLI::Option* yG = symbol->add_option("--t-grid", fl.grid, "Grid points (default 721)");
  CLI::Option* yM = symbol->add_option("--M", fl.M, "Fourier truncation (default 50)");

  auto* table2 = app.add_subcommand("table2", "lambda_max(F_K(0)) for K = 1..Kmax");
  CLI::Option* tK = table2->add_option("Kmax", fl.Kmax, "Largest K (default 60)");
  CLI::Option* tM = table2->add_option("--M", fl.M, "Fourier truncation (default 50)");

  auto* chsh = app.add_subcommand("chsh", "CHSH test functions on A(N,K) with residual report");
  CLI::Option* cE = chsh->add_option("--eta", fl.eta, "eta in (sqrt2 - 1, 1)");
  CLI::Option* cN = chsh->add_option("--N", fl.N, "Scale span N1 - N0 (matrix A(N,K))");
  CLI::Option* cK = chsh->add_option("--K", fl.K, "Translations per scale");
  CLI::Option* c0 = chsh->add_option("--N0", fl.N0, "Coarsest scale (default 0)");

  auto* bumpify = app.add_subcommand("bumpify", "Bumpified CHSH inner products over an epsilon sweep");
  CLI::Option* pE = bumpify->add_option("--eta", fl.eta, "eta in (sqrt2 - 1, 1)");
  CLI::Option* pS = bumpify->add_option("--eps-list", fl.epsilons, "Decreasing epsilons (default 0.2 .. 0.0125)")
                          ->delimiter(',');
  CLI::Option* pN = bumpify->add_option("--N", fl.N, "Scale span (default 200)");
  CLI::Option* pK = bumpify->add_option("--K", fl.K, "Translations per scale (default 2)");
  CLI::Option* p0 = bumpify->add_option("--N0", fl.N0, "Coarsest scale (default 0)");

  auto* verify = app.add_subcommand("verify-all", "Run the acceptance criteria");
  verify->add_option("--criterion", fl.criteria, "Run only these criteria (1..11)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << io::dump({{"error", {{"kind", "usage_error"}, {"message", e.what()}}}}) << '\n';
    return 2;
  }

  try {
    json input = config_opt->count() > 0 ? read_config_json(fl.config) : json::object();
    put(input, "threads", threads_opt, fl.threads);
    put(input, "output", output_opt, fl.output);
    if (!input.contains("threads")) {
      if (const char* env = std::getenv("WCSL_THREADS"); env != nullptr && *env != '\0') {
        try {
          input["threads"] = std::stoi(env);
        } catch (const std::exception&) {
          throw io::ConfigError({std::string("threads: WCSL_THREADS is not an integer (got \"") + env + "\")"});
        }
      }
    }

    if (matrix->parsed()) {
      put(input, "N", mN, fl.N);
      put(input, "K", mK, fl.K);
      const io::RunConfig cfg = resolve(input, {"N", "K"});
      numeric::set_thread_limit(cfg.threads);
      const KernelMatrix m = assemble(*cfg.N, *cfg.K);
      std::ostringstream s;
      io::write_matrix_csv(m, s);
      emit(s.str(), cfg, out);
      return 0;
    }
    if (spectrum->parsed()) {
      put(input, "N", sN, fl.N);
      put(input, "K", sK, fl.K);
      const io::RunConfig cfg = resolve(input, {"N", "K"});
      numeric::set_thread_limit(cfg.threads);
      const KernelMatrix m = assemble(*cfg.N, *cfg.K);
      const SpectralResult s = spectrum_extremes(m);
      emit(document("spectrum", {{"N", *cfg.N}, {"K", *cfg.K}}, json::array({spectrum_row(m, s)})), cfg, out);
      return 0;
    }
    if (bounds->parsed()) {
      put(input, "N", bN, fl.N);
      const io::RunConfig cfg = resolve(input, {"N"});
      numeric::set_thread_limit(cfg.threads);
      json rows = json::array();
      for (int n = 0; n <= *cfg.N; ++n) {
        json row = {{"N", n}, {"M_N", bound_M(n).M_N}};
        if (n >= 1) {
          const K1Bounds b = k1_bounds(n);
          const SpectralResult s = spectrum_extremes(assemble(n, 1));
          row["lower"] = b.lower;
          row["upper"] = b.upper;
          row["lambda_max"] = s.lambda_max;
        }
        rows.push_back(std::move(row));
      }
      emit(document("bounds", {{"N", *cfg.N}, {"asymptote", k1_asymptote()}}, rows), cfg, out);
      return 0;
    }
    if (symbol->parsed()) {
      put(input, "K", yK, fl.K);
      put(input, "grid", yG, fl.grid);
      put(input, "M", yM, fl.M);
      const io::RunConfig cfg = resolve(input, {"K"});
      numeric::set_thread_limit(cfg.threads);
      const SymbolCurve c = symbol_curve(*cfg.K, cfg.M, cfg.grid);
      std::ostringstream s;
      s << "t,lambda_max\n";
      for (std::size_t i = 0; i < c.grid.size(); ++i) {
        s << io::format_double(c.grid[i]) << ',' << io::format_double(c.values[i]) << '\n';
      }
      emit(s.str(), cfg, out);
      if (!c.max_at_zero) {
        err << io::dump({{"warning",
                          {{"kind", "anomaly"},
                           {"message", "grid maximum not attained at t = 0"},
                           {"t", c.grid[c.argmax]},
                           {"value", c.values[c.argmax]}}}})
            << '\n';
      }
      return 0;
    }
    if (table2->parsed()) {
      put(input, "Kmax", tK, fl.Kmax);
      put(input, "M", tM, fl.M);
      const io::RunConfig cfg = resolve(input, {});
      numeric::set_thread_limit(cfg.threads);
      json rows = json::array();
      for (const FourierRow& r : fourier_table(cfg.Kmax, cfg.M)) {
        rows.push_back({{"K", r.K}, {"lambda_max", r.lambda_max}, {"residual", r.residual}});
      }
      emit(document("table2", {{"Kmax", cfg.Kmax}, {"M", cfg.M}}, rows), cfg, out);
      return 0;
    }
    if (chsh->parsed()) {
      put(input, "eta", cE, fl.eta);
      put(input, "N", cN, fl.N);
      put(input, "K", cK, fl.K);
      put(input, "N0", c0, fl.N0);
      const io::RunConfig cfg = resolve(input, {"eta", "N", "K"});
      numeric::set_thread_limit(cfg.threads);
      const int n0 = cfg.N0.value_or(0);
      const Resolution res{n0, n0 + *cfg.N, *cfg.K};
      const ChshRun r = solve_chsh(*cfg.eta, res);
      emit(document("chsh", {{"eta", *cfg.eta}, {"N0", n0}, {"N", *cfg.N}, {"K", *cfg.K}},
                    json::array({chsh_row(r)})),
           cfg, out);
      return 0;
    }
    if (bumpify->parsed()) {
      put(input, "eta", pE, fl.eta);
      put(input, "epsilons", pS, fl.epsilons);
      put(input, "N", pN, fl.N);
      put(input, "K", pK, fl.K);
      put(input, "N0", p0, fl.N0);
      const io::RunConfig cfg = resolve(input, {"eta"});
      numeric::set_thread_limit(cfg.threads);
      const int n0 = cfg.N0.value_or(0);
      const Resolution res{n0, n0 + cfg.N.value_or(200), cfg.K.value_or(2)};
      const BumpSweep sweep = bump_sweep(*cfg.eta, res, cfg.epsilons);
      json rows = json::array();
      for (const BumpRecord& r : sweep.per_eps) rows.push_back(bump_row(r, sweep.eta, sweep.lambda_max));
      emit(document("bumpify",
                    {{"eta", sweep.eta},
                     {"N0", res.N0},
                     {"N", res.N1 - res.N0},
                     {"K", res.K},
                     {"epsilons", sweep.epsilons}},
                    rows),
           cfg, out);
      return 0;
    }
    if (verify->parsed()) {
      const io::RunConfig cfg = resolve(input, {});
      numeric::set_thread_limit(cfg.threads);
      for (int id : fl.criteria) {
        if (id < 1 || id > kCriterionCount) {
          throw io::ConfigError({"criterion: must lie in [1, " + std::to_string(kCriterionCount) +
                                 "] (got " + std::to_string(id) + ")"});
        }
      }
      int failures = 0;
      if (cfg.output.empty() || cfg.output == "-") {
        failures = run_acceptance(fl.criteria, out);
      } else {
        std::ostringstream s;
        failures = run_acceptance(fl.criteria, s);
        emit(s.str(), cfg, out);
      }
      return failures == 0 ? 0 : 1;
    }
  } catch (const Error& e) {
    err << io::dump(error_payload(e)) << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << io::dump({{"error", {{"kind", "internal_error"}, {"message", e.what()}}}}) << '\n';
    return 1;
  }
  return 2;
}

}  // namespace wcsl::cli
