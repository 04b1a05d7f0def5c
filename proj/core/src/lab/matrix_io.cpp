#include "sphlab/lab/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "sphlab/error.hpp"
#include "sphlab/lab/csv.hpp"

namespace sphlab::lab {
namespace {

double parse_double(std::string_view s, std::size_t line) {
  if (s == "inf" || s == "+inf") return kInfinity;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError("matrix file: bad number '" + std::string(s) + "'", line);
  }
  return v;
}

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? text.size() : nl + 1;
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      const std::size_t j = raw.find_first_of(" \t\r", i);
      const std::size_t stop = j == std::string_view::npos ? raw.size() : j;
      if (stop > i) line.tokens.push_back(raw.substr(i, stop - i));
      i = stop;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace

Complex parse_complex(std::string_view token, std::size_t line) {
  if (token.empty()) throw FormatError("matrix file: empty entry", line);
  if (token.back() != 'j') return {parse_double(token, line), 0.0};
  token.remove_suffix(1);
  // Split at the last sign that is not a leading sign or part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = token.size(); i-- > 1;) {
    if ((token[i] == '+' || token[i] == '-') && token[i - 1] != 'e' && token[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) {
    if (token.empty() || token == "+" || token == "-") {
      return {0.0, token == "-" ? -1.0 : 1.0};
    }
    return {0.0, parse_double(token, line)};
  }
  const std::string_view re = token.substr(0, split);
  std::string_view im = token.substr(split);
  double imag = 0.0;
  if (im == "+" || im == "-") {
    imag = im == "-" ? -1.0 : 1.0;
  } else {
    imag = parse_double(im, line);
  }
  return {parse_double(re, line), imag};
}

std::string format_complex(Complex value) {
  std::string im = to_cell(value.imag());
  if (im.front() != '-') im = "+" + im;
  return to_cell(value.real()) + im + "j";
}

MaxNormProblem parse_matrix_family(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw FormatError("matrix file: missing header 'n N p'", 1);
  const Line& header = lines.front();
  if (header.tokens.size() != 3) throw FormatError("matrix file: header must be 'n N p'", header.number);
  const double n_real = parse_double(header.tokens[0], header.number);
  const double count_real = parse_double(header.tokens[1], header.number);
  const double p = parse_double(header.tokens[2], header.number);
  if (!(n_real >= 1.0) || n_real != std::floor(n_real) || n_real > 4096) {
    throw FormatError("matrix file: n must be a positive integer", header.number);
  }
  if (!(count_real >= 1.0) || count_real != std::floor(count_real)) {
    throw FormatError("matrix file: N must be a positive integer", header.number);
  }
  if (!(p >= 1.0)) throw FormatError("matrix file: p must be >= 1", header.number);
  const auto n = static_cast<Eigen::Index>(n_real);
  const auto count = static_cast<std::size_t>(count_real);

  MaxNormProblem problem;
  problem.p = p;
  std::size_t at = 1;
  for (std::size_t b = 0; b < count; ++b) {
    Matrix x(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      if (at >= lines.size()) {
        throw FormatError("matrix file: expected " + std::to_string(count) + " blocks of " +
                              std::to_string(n) + " rows",
                          lines.back().number + 1);
      }
      const Line& row = lines[at++];
      if (row.tokens.size() != static_cast<std::size_t>(n)) {
        throw FormatError("matrix file: row must have " + std::to_string(n) + " entries", row.number);
      }
      for (Eigen::Index c = 0; c < n; ++c) x(r, c) = parse_complex(row.tokens[static_cast<std::size_t>(c)], row.number);
    }
    problem.family.push_back(std::move(x));
  }
  if (at != lines.size()) throw FormatError("matrix file: trailing data", lines[at].number);
  return problem;
}

MaxNormProblem load_matrix_family(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("matrix file: cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_matrix_family(buffer.str());
}

std::string format_matrix_family(const MaxNormProblem& problem) {
  const auto n = problem.family.empty() ? 0 : problem.family.front().rows();
  std::string out = std::to_string(n) + " " + std::to_string(problem.family.size()) + " " +
                    (std::isinf(problem.p) ? std::string("inf") : to_cell(problem.p)) + "\n";
  for (const Matrix& x : problem.family) {
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      for (Eigen::Index c = 0; c < x.cols(); ++c) {
        if (c > 0) out += ' ';
        out += format_complex(x(r, c));
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace sphlab::lab
