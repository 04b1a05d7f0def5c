#include "sphlab/lab/report.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "sphlab/error.hpp"

namespace sphlab::lab {

std::string to_string(Relation relation) {
  switch (relation) {
    case Relation::kLess: return "<";
    case Relation::kLessEqual: return "<=";
    case Relation::kGreater: return ">";
    case Relation::kGreaterEqual: return ">=";
  }
  return "?";
}

double RunReport::summary_value(const std::string& key) const {
  for (const auto& [k, v] : summary_) {
    if (k == key) return v;
  }
  throw std::out_of_range("RunReport: no summary entry " + key);
}

const Check& RunReport::check(std::string name, double measured, Relation relation, double threshold,
                              std::string detail) {
  bool ok = false;
  switch (relation) {
    case Relation::kLess: ok = measured < threshold; break;
    case Relation::kLessEqual: ok = measured <= threshold; break;
    case Relation::kGreater: ok = measured > threshold; break;
    case Relation::kGreaterEqual: ok = measured >= threshold; break;
  }
  // NaN compares false and therefore fails.
  checks_.push_back(Check{std::move(name), measured, relation, threshold, ok, std::move(detail)});
  return checks_.back();
}

const Check& RunReport::check_flag(std::string name, bool ok, std::string detail) {
  return check(std::move(name), ok ? 1.0 : 0.0, Relation::kGreaterEqual, 1.0, std::move(detail));
}

bool RunReport::passed() const {
  if (checks_.empty()) return false;
  for (const Check& c : checks_) {
    if (!c.passed) return false;
  }
  return true;
}

std::string RunReport::summary_text() const {
  std::string out = "report: " + name_ + "\n";
  if (!rng_id_.empty()) out += "rng: " + rng_id_ + "\n";
  out += "[config]\n";
  for (const auto& [k, v] : config_) out += k + " = " + v + "\n";
  out += "[summary]\n";
  for (const auto& [k, v] : summary_) out += k + " = " + to_cell(v) + "\n";
  out += "[checks]\n";
  for (const Check& c : checks_) {
    out += (c.passed ? "PASS " : "FAIL ") + c.name + ": " + to_cell(c.measured) + " " +
           to_string(c.relation) + " " + to_cell(c.threshold);
    if (!c.detail.empty()) out += "  (" + c.detail + ")";
    out += "\n";
  }
  if (!notes_.empty()) {
    out += "[notes]\n";
    for (const auto& n : notes_) out += n + "\n";
  }
  out += std::string("result: ") + (passed() ? "PASS" : "FAIL") + "\n";
  return out;
}

void RunReport::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  const auto write_file = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("report: cannot write " + path.string());
    out << text;
  };
  write_file(dir / (name_ + ".csv"), table_.str());
  write_file(dir / (name_ + ".summary.txt"), summary_text());
}

}  // namespace sphlab::lab
