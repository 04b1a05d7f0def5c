#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "sphlab/lab/csv.hpp"

namespace sphlab::lab {

enum class Relation { kLess, kLessEqual, kGreater, kGreaterEqual };

std::string to_string(Relation relation);

/// A named assertion with its measured value.
struct Check {
  std::string name;
  double measured = 0.0;
  Relation relation = Relation::kLess;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;
};

class RunReport {
 public:
  explicit RunReport(std::string name = {}) : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

  void echo_config(std::string key, std::string value) { config_.emplace_back(std::move(key), std::move(value)); }
  const std::vector<std::pair<std::string, std::string>>& config() const noexcept { return config_; }

  CsvTable& table() noexcept { return table_; }
  const CsvTable& table() const noexcept { return table_; }

  void add_summary(std::string key, double value) { summary_.emplace_back(std::move(key), value); }
  const std::vector<std::pair<std::string, double>>& summary() const noexcept { return summary_; }
  /// Value of a summary entry; throws std::out_of_range when absent.
  double summary_value(const std::string& key) const;

  const Check& check(std::string name, double measured, Relation relation, double threshold,
                     std::string detail = {});
  const Check& check_flag(std::string name, bool ok, std::string detail = {});
  const std::vector<Check>& checks() const noexcept { return checks_; }

  void note(std::string text) { notes_.push_back(std::move(text)); }
  const std::vector<std::string>& notes() const noexcept { return notes_; }

  void set_rng_id(std::string id) { rng_id_ = std::move(id); }
  const std::string& rng_id() const noexcept { return rng_id_; }
  void set_wall_seconds(double seconds) noexcept { wall_seconds_ = seconds; }
  double wall_seconds() const noexcept { return wall_seconds_; }

  /// True when at least one check ran and all passed.
  bool passed() const;

  /// Config echo, summary, checks and notes. Wall time is left out so equal
  /// inputs give equal bytes.
  std::string summary_text() const;

  /// Writes <dir>/<name>.csv and <dir>/<name>.summary.txt.
  void write(const std::filesystem::path& dir) const;

 private:
  std::string name_;
  std::vector<std::pair<std::string, std::string>> config_;
  CsvTable table_;
  std::vector<std::pair<std::string, double>> summary_;
  std::vector<Check> checks_;
  std::vector<std::string> notes_;
  std::string rng_id_;
  double wall_seconds_ = 0.0;
};

}  // namespace sphlab::lab
