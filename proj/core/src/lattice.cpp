#include "sphlab/lattice.hpp"

#include <stdexcept>
#include <string>

#include "sphlab/error.hpp"

namespace sphlab {
namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("rep_counts: 64-bit overflow");
  return out;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("rep_counts: 64-bit overflow");
  return out;
}

// Convolve a count table with r_1 once: r_{m+1}(k) = sum_j w_j r_m(k - j^2).
std::vector<std::uint64_t> convolve_with_squares(const std::vector<std::uint64_t>& prev) {
  const auto size = static_cast<std::int64_t>(prev.size());
  std::vector<std::uint64_t> next(prev.size(), 0);
  for (std::int64_t k = 0; k < size; ++k) {
    std::uint64_t acc = prev[static_cast<std::size_t>(k)];
    for (std::int64_t j = 1; j * j <= k; ++j) {
      acc = checked_add(acc, checked_mul(2, prev[static_cast<std::size_t>(k - j * j)]));
    }
    next[static_cast<std::size_t>(k)] = acc;
  }
  return next;
}

std::int64_t isqrt(std::int64_t k) {
  std::int64_t r = 0;
  while ((r + 1) * (r + 1) <= k) ++r;
  return r;
}

}  // namespace

RepCountTable rep_counts(int d, std::int64_t max_k) {
  if (d < 1) throw std::invalid_argument("rep_counts: dimension must be positive");
  if (max_k < 0) throw std::invalid_argument("rep_counts: max_k must be nonnegative");

  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_k) + 1, 0);
  counts[0] = 1;  // r_0
  for (int m = 0; m < d; ++m) counts = convolve_with_squares(counts);
  return RepCountTable{d, max_k, std::move(counts)};
}

std::uint64_t rep_count(int d, std::int64_t k) { return rep_counts(d, k)[k]; }

SphereShell::SphereShell(int dimension, std::int64_t radius_sq, std::vector<int> coords)
    : dimension_(dimension), radius_sq_(radius_sq), coords_(std::move(coords)) {
  if (dimension_ < 1 || coords_.size() % static_cast<std::size_t>(dimension_) != 0) {
    throw std::invalid_argument("SphereShell: coordinate buffer does not match dimension");
  }
}

SphereShell sphere_shell(int d, std::int64_t k, std::uint64_t point_budget) {
  if (d < 1) throw std::invalid_argument("sphere_shell: dimension must be positive");
  if (k < 0) throw std::invalid_argument("sphere_shell: radius_sq must be nonnegative");

  // tables[m][j] = r_m(j), used to prune branches whose remainder is not a sum of m squares.
  std::vector<std::vector<std::uint64_t>> tables(static_cast<std::size_t>(d) + 1);
  tables[0].assign(static_cast<std::size_t>(k) + 1, 0);
  tables[0][0] = 1;
  for (int m = 1; m <= d; ++m) tables[m] = convolve_with_squares(tables[m - 1]);

  const std::uint64_t total = tables[d][static_cast<std::size_t>(k)];
  if (total > point_budget) {
    throw ResourceError("sphere_shell: r_" + std::to_string(d) + "(" + std::to_string(k) +
                        ") = " + std::to_string(total) + " exceeds point budget " +
                        std::to_string(point_budget));
  }

  std::vector<int> coords;
  coords.reserve(static_cast<std::size_t>(total) * static_cast<std::size_t>(d));
  std::vector<int> current(static_cast<std::size_t>(d), 0);

  auto recurse = [&](auto&& self, int axis, std::int64_t remaining) -> void {
    if (axis == d) {
      coords.insert(coords.end(), current.begin(), current.end());
      return;
    }
    const int dims_left = d - axis - 1;
    const std::int64_t r = isqrt(remaining);
    for (std::int64_t v = -r; v <= r; ++v) {
      const std::int64_t rest = remaining - v * v;
      if (tables[dims_left][static_cast<std::size_t>(rest)] == 0) continue;
      current[static_cast<std::size_t>(axis)] = static_cast<int>(v);
      self(self, axis + 1, rest);
    }
  };
  recurse(recurse, 0, k);

  return SphereShell(d, k, std::move(coords));
}

}  // namespace sphlab
