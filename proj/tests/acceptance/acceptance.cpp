// Runs every acceptance suite at its stated tolerance and prints one line per
// criterion. Exit status is 0 only when all of them pass.

#include <cstdio>
#include <cstring>
#include <exception>
#include <string>

#include "sphlab/lab/suites.hpp"

using namespace sphlab::lab;

int main(int argc, char** argv) {
  std::string out_dir;
  std::string only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--out") == 0 && i + 1 < argc) {
      out_dir = argv[++i];
    } else if (std::strcmp(argv[i], "--suite") == 0 && i + 1 < argc) {
      only = argv[++i];
    } else {
      std::fprintf(stderr, "usage: %s [--out DIR] [--suite NAME]\n", argv[0]);
      return 2;
    }
  }

  int failed = 0;
  int ran = 0;
  for (const SuiteInfo& info : suites()) {
    if (!only.empty() && info.name != only) continue;
    ++ran;
    bool ok = false;
    double seconds = 0.0;
    std::string why;
    try {
      const RunReport report = run_suite(info.name, Config{}, RunContext{});
      ok = report.passed();
      seconds = report.wall_seconds();
      for (const Check& c : report.checks()) {
        if (c.passed) continue;
        if (!why.empty()) why += "; ";
        why += c.name + "=" + to_cell(c.measured) + " vs " + to_cell(c.threshold);
      }
      if (!out_dir.empty()) report.write(out_dir);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    failed += ok ? 0 : 1;
    std::printf("%s  criterion %2d  %-13s %-34s %8.2f s%s%s\n", ok ? "PASS" : "FAIL", info.criterion,
                info.name.c_str(), info.title.c_str(), seconds, why.empty() ? "" : "  ", why.c_str());
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "no suite named '%s'\n", only.c_str());
    return 2;
  }
  std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
