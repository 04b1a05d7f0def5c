#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "sphlab/error.hpp"
#include "sphlab/lab/config.hpp"
#include "sphlab/lab/csv.hpp"
#include "sphlab/lab/matrix_io.hpp"
#include "sphlab/lab/report.hpp"
#include "sphlab/lab/rng.hpp"
#include "sphlab/lab/shell_cache.hpp"
#include "sphlab/lab/suites.hpp"

using namespace sphlab;
using namespace sphlab::lab;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sphlab_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Config, ParsesValuesAndLists) {
  const Config cfg = Config::parse("# comment\nkind = decay\nLambda = 2, 3,4\np = 3/2\nq = inf  # trailing\n\n");
  EXPECT_EQ(cfg.get_string("kind"), "decay");
  EXPECT_EQ(cfg.get_int_list("Lambda"), (std::vector<std::int64_t>{2, 3, 4}));
  EXPECT_DOUBLE_EQ(cfg.get_real("p"), 1.5);
  EXPECT_TRUE(std::isinf(cfg.get_real("q")));
  EXPECT_EQ(cfg.get_int("missing", 7), 7);
}

TEST(Config, Errors) {
  EXPECT_THROW(Config::parse("a = 1\nnot a pair\n"), FormatError);
  EXPECT_THROW(Config::parse("a = 1\na = 2\n"), FormatError);
  const Config cfg = Config::parse("n = two\n");
  try {
    cfg.get_int("n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "n");
  }
  EXPECT_THROW(cfg.get_int("absent"), ConfigError);
  EXPECT_THROW(cfg.restrict_to({"m"}, "test"), ConfigError);
}

TEST(Csv, EscapingAndRoundTrip) {
  CsvTable t({"name", "value"});
  t.add_row({"plain", to_cell(0.1)});
  t.add_row({"with,comma", "say \"hi\""});
  const std::string text = t.str();
  EXPECT_EQ(text, "name,value\nplain,0.1\n\"with,comma\",\"say \"\"hi\"\"\"\n");
  const auto rows = parse_csv(text);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[2][0], "with,comma");
  EXPECT_EQ(rows[2][1], "say \"hi\"");
  EXPECT_THROW(t.add_row({"only one"}), std::invalid_argument);
}

TEST(Csv, ShortestRoundTripDoubles) {
  for (const double v : {0.1, 1.0 / 3.0, -2.5e-17, 12345.0}) EXPECT_EQ(std::stod(to_cell(v)), v);
  EXPECT_EQ(to_cell(std::int64_t{-4}), "-4");
}

TEST(Report, ChecksAndSummaryText) {
  RunReport r("demo");
  r.echo_config("k", "3");
  r.add_summary("x", 0.5);
  r.check("err", 1e-9, Relation::kLess, 1e-8);
  EXPECT_TRUE(r.passed());
  r.check_flag("flag", false, "why");
  EXPECT_FALSE(r.passed());
  const std::string text = r.summary_text();
  EXPECT_NE(text.find("PASS err"), std::string::npos);
  EXPECT_NE(text.find("FAIL flag"), std::string::npos);
  EXPECT_NE(text.find("result: FAIL"), std::string::npos);
  EXPECT_FALSE(RunReport("empty").passed());
}

TEST(Rng, DeterministicStreams) {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(a.uniform(), b.uniform());
  EXPECT_NE(Rng(42).split(1).uniform(), Rng(42).split(2).uniform());
  Rng c(1);
  const Matrix h = random_hermitian(c, 4);
  EXPECT_LT((h - h.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ShellCache, FormatRoundTrip) {
  const SphereShell shell = sphere_shell(5, 1);
  const std::string text = format_shell(shell);
  EXPECT_EQ(text.substr(0, text.find('\n')), "5 1 10");
  EXPECT_EQ(parse_shell(text), shell);
  const fs::path dir = scratch_dir("roundtrip");
  write_shell(shell, dir / "s.txt");
  EXPECT_EQ(read_shell(dir / "s.txt"), shell);
}

TEST(ShellCache, TamperedCountIsRejected) {
  std::string text = format_shell(sphere_shell(5, 1));
  text.replace(0, text.find('\n'), "5 1 11");
  try {
    parse_shell(text);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_NE(std::string(e.what()).find("count"), std::string::npos);
  }
}

TEST(ShellCache, MalformedPoints) {
  EXPECT_THROW(parse_shell("2 1 4\n-1 0\n0 -1\n0 1\n1 1\n"), FormatError);     // off the shell
  EXPECT_THROW(parse_shell("2 1 4\n0 -1\n-1 0\n0 1\n1 0\n"), FormatError);     // order
  EXPECT_THROW(parse_shell("2 1 4\n-1 0\n0 -1\n0 1\n1 0\n9\n"), FormatError);  // trailing
  EXPECT_THROW(parse_shell("2 1\n"), FormatError);
}

TEST(ShellCache, MemoryThenDisk) {
  const fs::path dir = scratch_dir("cache");
  const auto t0 = std::chrono::steady_clock::now();
  {
    ShellCache cache(dir);
    const SphereShell& first = cache.get(5, 30);
    const auto t1 = std::chrono::steady_clock::now();
    const SphereShell& again = cache.get(5, 30);
    const auto t2 = std::chrono::steady_clock::now();
    EXPECT_EQ(&first, &again);
    EXPECT_EQ(cache.enumerations(), 1u);
    // A memory hit must be far cheaper than the enumeration it replaces.
    EXPECT_LT(t2 - t1, (t1 - t0) + std::chrono::milliseconds(1));
    EXPECT_TRUE(fs::exists(cache.path_for(5, 30)));
  }
  ShellCache fresh(dir);
  EXPECT_EQ(fresh.get(5, 30), sphere_shell(5, 30));
  EXPECT_EQ(fresh.disk_reads(), 1u);
  EXPECT_EQ(fresh.enumerations(), 0u);
}

TEST(MatrixIo, ParsesComplexEntries) {
  EXPECT_EQ(parse_complex("1.5-2j"), Complex(1.5, -2.0));
  EXPECT_EQ(parse_complex("-3"), Complex(-3.0, 0.0));
  EXPECT_EQ(parse_complex("2j"), Complex(0.0, 2.0));
  EXPECT_EQ(parse_complex("1e-3+1e+2j"), Complex(1e-3, 1e2));
  EXPECT_EQ(parse_complex(format_complex(Complex(0.25, -0.125))), Complex(0.25, -0.125));
  EXPECT_THROW(parse_complex("abc"), FormatError);
}

TEST(MatrixIo, FamilyRoundTripAndErrors) {
  const MaxNormProblem p = load_matrix_family(fs::path(SPHLAB_TEST_DATA) / "diag2.txt");
  EXPECT_EQ(p.family.size(), 2u);
  EXPECT_EQ(p.p, 2.0);
  const MaxNormProblem q = parse_matrix_family(format_matrix_family(p));
  EXPECT_EQ(q.family[1], p.family[1]);
  try {
    parse_matrix_family("2 1 2\n1 0\n0\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Experiment, FareyOrderThree) {
  const RunReport r = run_experiment(Config::parse("kind = farey\nLambda = 3\n"), RunContext{});
  EXPECT_EQ(r.table().rows().size(), 5u);
  EXPECT_EQ(r.table().header(), (std::vector<std::string>{"a", "q", "left_num", "left_den", "right_num", "right_den"}));
  EXPECT_TRUE(r.passed());
}

TEST(Experiment, NcmaxDiagonalFile) {
  Config cfg;
  cfg.set("kind", "ncmax");
  cfg.set("input", (fs::path(SPHLAB_TEST_DATA) / "diag2.txt").string());
  const RunReport r = run_experiment(cfg, RunContext{});
  EXPECT_NEAR(r.summary_value("objective"), std::sqrt(13.0), 1e-6);
  EXPECT_TRUE(r.passed());
}

TEST(Experiment, TransferTrivialFamily) {
  const RunReport r =
      run_experiment(Config::parse("kind = transfer\nn = 2\nd = 5\np = 2\nfamily = trivial\nK = 1,4,9\n"), RunContext{});
  ASSERT_EQ(r.table().rows().size(), 3u);
  for (const auto& row : r.table().rows()) EXPECT_NEAR(std::stod(row[1]), 1.0, 1e-6);
}

TEST(Experiment, ValidatesKeys) {
  try {
    run_experiment(Config::parse("kind = reconstruct\nd = 5\nk = 1\n"), RunContext{});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "Lambda");
  }
  EXPECT_THROW(run_experiment(Config::parse("kind = farey\nLambda = 3\nbogus = 1\n"), RunContext{}), ConfigError);
  EXPECT_THROW(run_experiment(Config::parse("kind = nothing\n"), RunContext{}), ConfigError);
}

TEST(Experiment, ByteReproducibleOutput) {
  const Config cfg = Config::parse("kind = gauss\nd = 3\nq_max = 6\nsamples = 4\n");
  const fs::path a = scratch_dir("det_a");
  const fs::path b = scratch_dir("det_b");
  run_experiment(cfg, RunContext{123, 0.0}).write(a);
  run_experiment(cfg, RunContext{123, 0.0}).write(b);
  for (const char* f : {"gauss_dft.csv", "gauss_dft.summary.txt"}) {
    EXPECT_EQ(slurp(a / f), slurp(b / f));
    EXPECT_FALSE(slurp(a / f).empty());
  }
}

TEST(Suites, RegistryHasTwelveEntries) {
  ASSERT_EQ(suites().size(), 12u);
  for (std::size_t i = 0; i < suites().size(); ++i) EXPECT_EQ(suites()[i].criterion, static_cast<int>(i) + 1);
  EXPECT_THROW(suite_info("missing"), ConfigError);
}

TEST(Suites, BudgetExhaustionIsReported) {
  // A tiny site budget makes the truncation check stop early.
  const RunReport r = run_suite("transference", Config{}, RunContext{1, 1000.0});
  EXPECT_FALSE(r.passed());
  bool saw = false;
  for (const auto& c : r.checks()) saw = saw || (c.name == "within_budget" && !c.passed);
  EXPECT_TRUE(saw);
}
