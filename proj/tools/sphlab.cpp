#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sphlab/error.hpp"
#include "sphlab/farey.hpp"
#include "sphlab/gauss.hpp"
#include "sphlab/lab/config.hpp"
#include "sphlab/lab/csv.hpp"
#include "sphlab/lab/matrix_io.hpp"
#include "sphlab/lab/shell_cache.hpp"
#include "sphlab/lab/suites.hpp"
#include "sphlab/lattice.hpp"
#include "sphlab/multiplier.hpp"
#include "sphlab/ncmax.hpp"
#include "sphlab/torus.hpp"

namespace fs = std::filesystem;
using namespace sphlab;
using namespace sphlab::lab;

namespace {

struct Globals {
  std::uint64_t seed = 20240930;
  double budget = 0.0;
  std::string out;
};

void emit(const std::string& text, const Globals& g) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  const fs::path path(g.out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write " + g.out);
  file << text;
}

std::string join_ints(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string join_reals(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_cell(v[i]);
  return s;
}

// Frequencies requested by mult/approx: one explicit point or a full torus grid.
std::vector<std::vector<double>> frequencies(int d, const std::vector<double>& xi, int grid_side) {
  if (grid_side > 0) {
    const FrequencyGrid grid(d, grid_side);
    std::vector<std::vector<double>> out;
    out.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out.push_back(grid.frequency(i));
    return out;
  }
  if (xi.empty()) return {std::vector<double>(static_cast<std::size_t>(d), 0.0)};
  if (static_cast<int>(xi.size()) != d) throw DimensionMismatch("--xi needs " + std::to_string(d) + " coordinates");
  return {xi};
}

CsvTable multiplier_table(int d) {
  std::vector<std::string> header;
  for (int c = 1; c <= d; ++c) header.push_back("xi_" + std::to_string(c));
  for (const char* h : {"re", "im", "abs", "bound_envelope"}) header.emplace_back(h);
  return CsvTable(header);
}

void add_multiplier_row(CsvTable& table, const std::vector<double>& xi, Complex value, double envelope) {
  std::vector<std::string> row;
  for (const double x : xi) row.push_back(to_cell(x));
  for (const double v : {value.real(), value.imag(), std::abs(value), envelope}) row.push_back(to_cell(v));
  table.add_row(row);
}

int finish(const RunReport& report, const Globals& g, bool table_to_stdout) {
  if (table_to_stdout) {
    emit(report.table().str(), g);
    std::cerr << report.summary_text();
  } else {
    if (!g.out.empty()) report.write(g.out);
    std::cout << report.summary_text();
  }
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sphlab: discrete spherical averages, circle method and transference experiments"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_option("--budget", g.budget,
                 "work budget (terms, sites or points, depending on the command); 0 keeps defaults");
  app.add_option("--out", g.out, "output file (CSV commands) or directory (verify, experiment)");

  int rd_d = 5;
  std::int64_t rd_kmax = 50;
  auto* rd = app.add_subcommand("rd", "representation counts r_d(k), k = 0..k_max");
  rd->add_option("--d", rd_d, "dimension")->required();
  rd->add_option("--k-max", rd_kmax, "largest k")->capture_default_str();

  int sh_d = 5;
  std::int64_t sh_k = 1;
  std::string sh_cache;
  auto* shell = app.add_subcommand("shell", "lattice points with |m|^2 = k, in shell cache format");
  shell->add_option("--d", sh_d, "dimension")->required();
  shell->add_option("--k", sh_k, "squared radius")->required();
  shell->add_option("--cache", sh_cache, "shell cache directory");

  std::int64_t fa_order = 3;
  auto* farey = app.add_subcommand("farey", "Farey sequence and major-arc table");
  farey->add_option("--order", fa_order, "order Lambda")->required();

  std::int64_t ga_a = 1;
  std::int64_t ga_q = 1;
  std::vector<std::int64_t> ga_ell;
  auto* gauss = app.add_subcommand("gauss", "quadratic Gauss sum G(a/q, l)");
  gauss->add_option("--a", ga_a)->required();
  gauss->add_option("--q", ga_q)->required();
  gauss->add_option("--ell", ga_ell, "l_1,...,l_d")->required()->delimiter(',');

  int mu_d = 5;
  std::int64_t mu_k = 1;
  std::vector<double> mu_xi;
  int mu_grid = 0;
  auto* mult = app.add_subcommand("mult", "exact multiplier m_lambda");
  mult->add_option("--d", mu_d)->required();
  mult->add_option("--k", mu_k, "lambda^2")->required();
  mult->add_option("--xi", mu_xi, "frequency xi_1,...,xi_d")->delimiter(',');
  mult->add_option("--grid", mu_grid, "evaluate on the full L^d torus grid");

  int ap_d = 5;
  std::int64_t ap_k = 1;
  std::vector<double> ap_xi;
  int ap_grid = 0;
  std::int64_t ap_qmax = 0;
  std::string ap_counting = "circle";
  auto* approx = app.add_subcommand("approx", "approximant sum over q <= q_max of N_lambda^{a/q}");
  approx->add_option("--d", ap_d)->required();
  approx->add_option("--k", ap_k, "lambda^2")->required();
  approx->add_option("--xi", ap_xi, "frequency xi_1,...,xi_d")->delimiter(',');
  approx->add_option("--grid", ap_grid, "evaluate on the full L^d torus grid");
  approx->add_option("--q-max", ap_qmax, "0 picks q_max from the tail bound")->capture_default_str();
  approx->add_option("--counting", ap_counting, "circle or literal")->check(CLI::IsMember({"circle", "literal"}));

  std::string nc_input;
  std::optional<double> nc_p;
  double nc_tol = 1e-7;
  auto* ncmax = app.add_subcommand("ncmax", "noncommutative maximal norm of a matrix family");
  ncmax->add_option("--input", nc_input, "matrix family file")->required()->check(CLI::ExistingFile);
  ncmax->add_option("--p", nc_p, "override the p in the file header");
  ncmax->add_option("--tol", nc_tol)->capture_default_str();

  int tr_n = 2;
  int tr_d = 5;
  std::optional<int> tr_window;
  int tr_cap = 4;
  double tr_p = 2.0;
  std::vector<double> tr_theta;
  std::vector<std::int64_t> tr_klist;
  std::string tr_family;
  auto* transfer = app.add_subcommand("transfer", "maximal-ratio table R(K) for an automorphism family");
  transfer->add_option("--n", tr_n)->capture_default_str();
  transfer->add_option("--d", tr_d)->capture_default_str();
  transfer->add_option("--J", tr_window, "also check the truncation identity at window J");
  transfer->add_option("--cap", tr_cap, "K ranges over squares up to cap^2")->capture_default_str();
  transfer->add_option("--p", tr_p)->capture_default_str();
  transfer->add_option("--theta", tr_theta, "phases for the n = 2 diagonal family")->delimiter(',');
  transfer->add_option("--K-list", tr_klist, "explicit K values")->delimiter(',');
  transfer->add_option("--family", tr_family, "diagonal, permutation or trivial")
      ->check(CLI::IsMember({"diagonal", "permutation", "trivial"}));

  std::string ve_suite;
  auto* verify = app.add_subcommand("verify", "run an acceptance suite (or 'all')");
  verify->add_option("--suite", ve_suite)->required();
  verify->add_flag_callback("--list", [] {
    for (const SuiteInfo& s : suites()) std::cout << s.name << "  " << s.title << "\n";
    std::exit(0);
  }, "list suites");

  std::string ex_file;
  auto* experiment = app.add_subcommand("experiment", "run experiment configs");
  experiment->require_subcommand(1);
  auto* ex_run = experiment->add_subcommand("run", "run one key = value config file");
  ex_run->add_option("file", ex_file)->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  const RunContext ctx{g.seed, g.budget};
  try {
    if (rd->parsed()) {
      const RepCountTable table = rep_counts(rd_d, rd_kmax);
      CsvTable csv({"k", "r"});
      for (std::int64_t k = 0; k <= rd_kmax; ++k) csv.add_row({to_cell(k), to_cell(table[k])});
      emit(csv.str(), g);
      return 0;
    }
    if (shell->parsed()) {
      const auto budget = g.budget > 0.0 ? static_cast<std::uint64_t>(g.budget) : kDefaultPointBudget;
      if (sh_cache.empty()) {
        emit(format_shell(sphere_shell(sh_d, sh_k, budget)), g);
      } else {
        ShellCache cache(sh_cache, budget);
        emit(format_shell(cache.get(sh_d, sh_k)), g);
      }
      return 0;
    }
    if (farey->parsed()) {
      Config cfg;
      cfg.set("Lambda", std::to_string(fa_order));
      return finish(run_suite("farey", cfg, ctx), g, true);
    }
    if (gauss->parsed()) {
      const Complex value = gauss_sum(ga_a, ga_q, ga_ell);
      const double norm = std::pow(static_cast<double>(ga_q), -0.5 * static_cast<double>(ga_ell.size()));
      CsvTable csv({"re", "im", "abs", "normalized_abs"});
      csv.add_row({to_cell(value.real()), to_cell(value.imag()), to_cell(std::abs(value)),
                   to_cell(std::abs(value) * norm)});
      emit(csv.str(), g);
      return 0;
    }
    if (mult->parsed()) {
      const SphereShell sh = sphere_shell(mu_d, mu_k);
      CsvTable csv = multiplier_table(mu_d);
      // |m_lambda| <= 1: it is an average of unimodular terms.
      for (const auto& xi : frequencies(mu_d, mu_xi, mu_grid)) add_multiplier_row(csv, xi, exact_multiplier(sh, xi), 1.0);
      emit(csv.str(), g);
      return 0;
    }
    if (approx->parsed()) {
      const SphereScale scale = SphereScale::make(ap_d, ap_k);
      ApproxOptions options;
      options.q_max = ap_qmax;
      options.counting = ap_counting == "literal" ? EndpointCounting::kLiteral : EndpointCounting::kCircle;
      if (g.budget > 0.0) options.q_budget = static_cast<std::int64_t>(g.budget);
      const Approximant approximant(scale, options);
      // Sum of per-arc envelopes over the classes kept, plus the tail.
      double envelope = approximant.tail_bound();
      for (std::int64_t q = 1; q <= approximant.q_max(); ++q) {
        std::int64_t classes = 0;
        for (std::int64_t a = 0; a < q; ++a) classes += std::gcd(a, q) == 1 ? 1 : 0;
        if (q == 1 && options.counting == EndpointCounting::kLiteral) classes = 2;
        envelope += static_cast<double>(classes) * approx_arc_envelope(scale, q);
      }
      CsvTable csv = multiplier_table(ap_d);
      for (const auto& xi : frequencies(ap_d, ap_xi, ap_grid)) add_multiplier_row(csv, xi, approximant(xi).value, envelope);
      emit(csv.str(), g);
      return 0;
    }
    if (ncmax->parsed()) {
      MaxNormProblem problem = load_matrix_family(nc_input);
      if (nc_p) problem.p = *nc_p;
      SolverOptions options;
      options.tol = nc_tol;
      if (g.budget > 0.0) options.max_iterations = static_cast<int>(g.budget);
      const MaxNormCertificate cert = ncmax_norm(problem, options);
      CsvTable csv({"objective", "residual", "gap", "lower_bound", "upper_bound", "iterations", "status"});
      csv.add_row({to_cell(cert.objective), to_cell(cert.residual), to_cell(cert.gap), to_cell(cert.lower_bound),
                   to_cell(cert.upper_bound), to_cell(cert.iterations), to_string(cert.status)});
      emit(csv.str(), g);
      const bool sound = cert.residual >= -options.tol * schatten_norm(cert.envelope, kInfinity);
      return cert.status == SolverStatus::kConverged && sound ? 0 : 1;
    }
    if (transfer->parsed()) {
      Config cfg;
      cfg.set("n", std::to_string(tr_n));
      cfg.set("d", std::to_string(tr_d));
      cfg.set("p", to_cell(tr_p));
      cfg.set("cap", std::to_string(tr_cap));
      if (tr_window) cfg.set("J", std::to_string(*tr_window));
      if (!tr_theta.empty()) cfg.set("theta", join_reals(tr_theta));
      if (!tr_klist.empty()) cfg.set("K_list", join_ints(tr_klist));
      if (!tr_family.empty()) cfg.set("family", tr_family);
      return finish(run_suite("ratio", cfg, ctx), g, true);
    }
    if (verify->parsed()) {
      std::vector<std::string> names;
      if (ve_suite == "all") {
        for (const SuiteInfo& s : suites()) names.push_back(s.name);
      } else {
        names.push_back(ve_suite);
      }
      int status = 0;
      for (const auto& name : names) status = std::max(status, finish(run_suite(name, Config{}, ctx), g, false));
      return status;
    }
    if (ex_run->parsed()) {
      Config cfg = Config::load(ex_file);
      // Input files are resolved against the config's own directory.
      if (cfg.has("input") && fs::path(cfg.get_string("input")).is_relative()) {
        cfg.set("input", (fs::path(ex_file).parent_path() / cfg.get_string("input")).string());
      }
      const RunReport report = run_experiment(cfg, ctx);
      Globals target = g;
      if (target.out.empty() && cfg.has("output")) target.out = cfg.get_string("output");
      return finish(report, target, false);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
