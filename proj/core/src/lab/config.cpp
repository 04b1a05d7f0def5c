#include "sphlab/lab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace sphlab::lab {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    parts.push_back(trim(s.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

}  // namespace

double parse_real(std::string_view token, std::string_view key) {
  token = trim(token);
  const std::string k(key);
  if (token.empty()) throw ConfigError(k, "empty value");
  if (token == "inf" || token == "+inf" || token == "infinity") {
    return std::numeric_limits<double>::infinity();
  }
  if (const auto slash = token.find('/'); slash != std::string_view::npos) {
    const double num = parse_real(token.substr(0, slash), key);
    const double den = parse_real(token.substr(slash + 1), key);
    if (den == 0.0) throw ConfigError(k, "zero denominator in '" + std::string(token) + "'");
    return num / den;
  }
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(k, "expected a real number, got '" + std::string(token) + "'");
  }
  return value;
}

std::int64_t parse_integer(std::string_view token, std::string_view key) {
  token = trim(token);
  std::int64_t value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (token.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError(std::string(key), "expected an integer, got '" + std::string(token) + "'");
  }
  return value;
}

Config Config::parse(std::string_view text) {
  Config cfg;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? nl : nl - start);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw FormatError("config: expected 'key = value'", line_no);
      const std::string key(trim(line.substr(0, eq)));
      if (key.empty()) throw FormatError("config: empty key", line_no);
      if (cfg.has(key)) throw FormatError("config: duplicate key '" + key + "'", line_no);
      cfg.entries_.emplace_back(key, std::string(trim(line.substr(eq + 1))));
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("config: cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

void Config::set(const std::string& key, std::string value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(key, std::move(value));
}

const std::string* Config::find(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return &v;
  }
  return nullptr;
}

bool Config::has(std::string_view key) const { return find(key) != nullptr; }

std::string Config::get_string(std::string_view key) const {
  const std::string* v = find(key);
  if (v == nullptr) throw ConfigError(std::string(key), "missing");
  return *v;
}

std::string Config::get_string(std::string_view key, std::string_view fallback) const {
  const std::string* v = find(key);
  return v == nullptr ? std::string(fallback) : *v;
}

std::int64_t Config::get_int(std::string_view key) const { return parse_integer(get_string(key), key); }

std::int64_t Config::get_int(std::string_view key, std::int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}

double Config::get_real(std::string_view key) const { return parse_real(get_string(key), key); }

double Config::get_real(std::string_view key, double fallback) const {
  return has(key) ? get_real(key) : fallback;
}

std::vector<std::int64_t> Config::get_int_list(std::string_view key) const {
  std::vector<std::int64_t> out;
  for (const auto part : split_list(get_string(key))) out.push_back(parse_integer(part, key));
  return out;
}

std::vector<std::int64_t> Config::get_int_list(std::string_view key, std::vector<std::int64_t> fallback) const {
  return has(key) ? get_int_list(key) : fallback;
}

std::vector<double> Config::get_real_list(std::string_view key) const {
  std::vector<double> out;
  for (const auto part : split_list(get_string(key))) out.push_back(parse_real(part, key));
  return out;
}

std::vector<double> Config::get_real_list(std::string_view key, std::vector<double> fallback) const {
  return has(key) ? get_real_list(key) : fallback;
}

void Config::require(std::initializer_list<std::string_view> keys, std::string_view context) const {
  for (const auto key : keys) {
    if (!has(key)) throw ConfigError(std::string(key), "required for " + std::string(context));
  }
}

void Config::restrict_to(const std::vector<std::string_view>& allowed, std::string_view context) const {
  for (const auto& [k, v] : entries_) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      throw ConfigError(k, "not recognised for " + std::string(context));
    }
  }
}

}  // namespace sphlab::lab
