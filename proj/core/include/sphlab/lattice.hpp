#pragma once

// Sum-of-squares counting and sphere-shell enumeration on Z^d.

#include <cstdint>
#include <span>
#include <vector>

namespace sphlab {

/// r_d(k) for k = 0..max_k: the number of ordered, signed ways of writing k
/// as a sum of d integer squares.
struct RepCountTable {
  int dimension = 0;
  std::int64_t max_k = 0;
  std::vector<std::uint64_t> counts;

  std::uint64_t operator[](std::int64_t k) const { return counts.at(static_cast<std::size_t>(k)); }
};

/// Builds r_d(0..max_k) by iterated convolution with r_1. Throws
/// std::overflow_error if a count does not fit in 64 bits.
RepCountTable rep_counts(int d, std::int64_t max_k);

/// Single value r_d(k).
std::uint64_t rep_count(int d, std::int64_t k);

inline constexpr std::uint64_t kDefaultPointBudget = std::uint64_t{1} << 24;

/// All m in Z^d with |m|^2 = k, stored flat in lexicographic order.
class SphereShell {
 public:
  SphereShell() = default;
  SphereShell(int dimension, std::int64_t radius_sq, std::vector<int> coords);

  int dimension() const noexcept { return dimension_; }
  std::int64_t radius_sq() const noexcept { return radius_sq_; }
  std::size_t size() const noexcept { return dimension_ == 0 ? 0 : coords_.size() / dimension_; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const int> point(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(dimension_),
            static_cast<std::size_t>(dimension_)};
  }
  const std::vector<int>& coords() const noexcept { return coords_; }

  friend bool operator==(const SphereShell&, const SphereShell&) = default;

 private:
  int dimension_ = 0;
  std::int64_t radius_sq_ = 0;
  std::vector<int> coords_;
};

/// Enumerates the shell |m|^2 = k in lexicographic order. Throws
/// ResourceError when r_d(k) exceeds point_budget.
SphereShell sphere_shell(int d, std::int64_t k,
                         std::uint64_t point_budget = kDefaultPointBudget);

}  // namespace sphlab
