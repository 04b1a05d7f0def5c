#pragma once

// RFC 4180 style tables: header row, comma separator, fields quoted when they
// contain a comma, quote or line break. Numbers use the shortest round-trip form.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sphlab::lab {

std::string csv_escape(std::string_view field);

std::string to_cell(double value);
std::string to_cell(std::int64_t value);
std::string to_cell(std::uint64_t value);
inline std::string to_cell(int value) { return to_cell(static_cast<std::int64_t>(value)); }
inline std::string to_cell(std::string value) { return value; }
inline std::string to_cell(const char* value) { return value; }

class CsvTable {
 public:
  CsvTable() = default;
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void set_header(std::vector<std::string> header) { header_ = std::move(header); }
  /// Throws std::invalid_argument when the width differs from the header.
  void add_row(std::vector<std::string> row);

  const std::vector<std::string>& header() const noexcept { return header_; }
  const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }
  bool empty() const noexcept { return rows_.empty(); }

  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Inverse of CsvTable::str (header included as the first record).
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace sphlab::lab
