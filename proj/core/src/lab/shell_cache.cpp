#include "sphlab/lab/shell_cache.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>
#include <string_view>
#include <vector>

#include "sphlab/error.hpp"

namespace sphlab::lab {
namespace {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    const auto nl = text_.find('\n', pos_);
    line = text_.substr(pos_, nl == std::string_view::npos ? std::string_view::npos : nl - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = nl == std::string_view::npos ? text_.size() : nl + 1;
    ++line_no_;
    return true;
  }
  std::size_t line_no() const noexcept { return line_no_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

std::vector<std::int64_t> parse_ints(std::string_view line, std::size_t line_no) {
  std::vector<std::int64_t> out;
  const char* p = line.data();
  const char* end = p + line.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == '\t')) ++p;
    if (p == end) break;
    std::int64_t v = 0;
    const auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc() || (next < end && *next != ' ' && *next != '\t')) {
      throw FormatError("shell cache: expected integers", line_no);
    }
    out.push_back(v);
    p = next;
  }
  return out;
}

}  // namespace

std::string format_shell(const SphereShell& shell) {
  std::string out = std::to_string(shell.dimension()) + " " + std::to_string(shell.radius_sq()) + " " +
                    std::to_string(shell.size()) + "\n";
  for (std::size_t i = 0; i < shell.size(); ++i) {
    const auto m = shell.point(i);
    for (std::size_t c = 0; c < m.size(); ++c) {
      if (c > 0) out += ' ';
      out += std::to_string(m[c]);
    }
    out += '\n';
  }
  return out;
}

SphereShell parse_shell(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  if (!reader.next(line)) throw FormatError("shell cache: missing header 'd k count'", 1);
  const auto header = parse_ints(line, 1);
  if (header.size() != 3) throw FormatError("shell cache: header must be 'd k count'", 1);
  const std::int64_t d = header[0];
  const std::int64_t k = header[1];
  const std::int64_t count = header[2];
  if (d < 1 || d > 64) throw FormatError("shell cache: dimension out of range", 1);
  if (k < 0) throw FormatError("shell cache: negative k", 1);
  const std::size_t count_line = reader.line_no();
  const std::uint64_t expected = rep_count(static_cast<int>(d), k);
  if (count < 0 || static_cast<std::uint64_t>(count) != expected) {
    throw FormatError("shell cache: count " + std::to_string(count) + " does not match r_" +
                          std::to_string(d) + "(" + std::to_string(k) + ") = " + std::to_string(expected),
                      count_line);
  }
  std::vector<int> coords;
  coords.reserve(static_cast<std::size_t>(count * d));
  std::vector<int> previous;
  for (std::int64_t i = 0; i < count; ++i) {
    if (!reader.next(line)) throw FormatError("shell cache: truncated point list", reader.line_no() + 1);
    const auto values = parse_ints(line, reader.line_no());
    if (values.size() != static_cast<std::size_t>(d)) {
      throw FormatError("shell cache: point has wrong dimension", reader.line_no());
    }
    std::int64_t norm = 0;
    std::vector<int> point;
    for (const auto v : values) {
      norm += v * v;
      point.push_back(static_cast<int>(v));
    }
    if (norm != k) throw FormatError("shell cache: point not on the shell", reader.line_no());
    if (!previous.empty() && !(previous < point)) {
      throw FormatError("shell cache: points out of lexicographic order", reader.line_no());
    }
    coords.insert(coords.end(), point.begin(), point.end());
    previous = std::move(point);
  }
  while (reader.next(line)) {
    if (!line.empty()) throw FormatError("shell cache: trailing data", reader.line_no());
  }
  return SphereShell(static_cast<int>(d), k, std::move(coords));
}

void write_shell(const SphereShell& shell, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  // Unique per writer so concurrent writers never share a temporary.
  auto tmp = path;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("shell cache: cannot write " + tmp.string());
    out << format_shell(shell);
    if (!out.flush()) throw Error("shell cache: write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

SphereShell read_shell(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("shell cache: cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_shell(buffer.str());
}

ShellCache::ShellCache(std::filesystem::path directory, std::uint64_t point_budget)
    : directory_(std::move(directory)), point_budget_(point_budget) {}

std::filesystem::path ShellCache::path_for(int d, std::int64_t k) const {
  return directory_ / ("shell_d" + std::to_string(d) + "_k" + std::to_string(k) + ".txt");
}

const SphereShell& ShellCache::get(int d, std::int64_t k) {
  const auto key = std::make_pair(d, k);
  if (const auto it = memory_.find(key); it != memory_.end()) return it->second;
  if (!directory_.empty()) {
    const auto path = path_for(d, k);
    if (std::filesystem::exists(path)) {
      ++disk_reads_;
      return memory_.emplace(key, read_shell(path)).first->second;
    }
  }
  ++enumerations_;
  SphereShell shell = sphere_shell(d, k, point_budget_);
  if (!directory_.empty()) write_shell(shell, path_for(d, k));
  return memory_.emplace(key, std::move(shell)).first->second;
}

}  // namespace sphlab::lab
