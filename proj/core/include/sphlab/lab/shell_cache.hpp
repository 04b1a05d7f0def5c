#pragma once

// Text cache for sphere shells:
//
//   sphlab-shell 1
//   d <dimension>
//   k <radius squared>
//   count <number of points>
//   <m_1> ... <m_d>        (one point per line, lexicographic order)

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "sphlab/lattice.hpp"

namespace sphlab::lab {

std::string format_shell(const SphereShell& shell);

/// Throws FormatError carrying the line number for malformed text, for a
/// count header that disagrees with r_d(k), and for points off the shell.
SphereShell parse_shell(std::string_view text);

/// Writes through a temporary file in the same directory and renames it into place.
void write_shell(const SphereShell& shell, const std::filesystem::path& path);
SphereShell read_shell(const std::filesystem::path& path);

/// Memory cache backed by an optional directory of shell files.
class ShellCache {
 public:
  explicit ShellCache(std::filesystem::path directory = {},
                      std::uint64_t point_budget = kDefaultPointBudget);

  /// Memory hit, else disk hit, else enumerate (and persist when a directory is set).
  const SphereShell& get(int d, std::int64_t k);

  std::filesystem::path path_for(int d, std::int64_t k) const;

  std::size_t enumerations() const noexcept { return enumerations_; }
  std::size_t disk_reads() const noexcept { return disk_reads_; }

 private:
  std::filesystem::path directory_;
  std::uint64_t point_budget_;
  std::map<std::pair<int, std::int64_t>, SphereShell> memory_;
  std::size_t enumerations_ = 0;
  std::size_t disk_reads_ = 0;
};

}  // namespace sphlab::lab
