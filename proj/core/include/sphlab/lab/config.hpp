#pragma once

// Flat `key = value` configuration text: one entry per line, `#` starts a
// comment, blank lines ignored. Lists are comma separated. Reals accept
// decimal, exponent, `a/b` and `inf` forms.

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sphlab/error.hpp"

namespace sphlab::lab {

/// Invalid or missing configuration entry; key() names it.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& message)
      : Error("config key '" + key + "': " + message), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Parses a real number token as described above; throws ConfigError naming key.
double parse_real(std::string_view token, std::string_view key = "value");
std::int64_t parse_integer(std::string_view token, std::string_view key = "value");

class Config {
 public:
  Config() = default;

  /// Throws FormatError for a non-comment line without '=' or with an empty
  /// key, and for a duplicated key.
  static Config parse(std::string_view text);
  static Config load(const std::filesystem::path& path);

  void set(const std::string& key, std::string value);
  bool has(std::string_view key) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }

  std::string get_string(std::string_view key) const;
  std::string get_string(std::string_view key, std::string_view fallback) const;
  std::int64_t get_int(std::string_view key) const;
  std::int64_t get_int(std::string_view key, std::int64_t fallback) const;
  double get_real(std::string_view key) const;
  double get_real(std::string_view key, double fallback) const;
  std::vector<std::int64_t> get_int_list(std::string_view key) const;
  std::vector<std::int64_t> get_int_list(std::string_view key, std::vector<std::int64_t> fallback) const;
  std::vector<double> get_real_list(std::string_view key) const;
  std::vector<double> get_real_list(std::string_view key, std::vector<double> fallback) const;

  /// Throws ConfigError for the first key of `keys` that is absent.
  void require(std::initializer_list<std::string_view> keys, std::string_view context) const;
  /// Throws ConfigError for the first entry whose key is not in `allowed`.
  void restrict_to(const std::vector<std::string_view>& allowed, std::string_view context) const;

 private:
  const std::string* find(std::string_view key) const;

  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace sphlab::lab
