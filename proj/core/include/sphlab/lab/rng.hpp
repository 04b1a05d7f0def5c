#pragma once

// Seedable, splittable random source. Child streams are seeded through
// splitmix64 so that split(i) streams are independent of each other and of
// the parent.

#include <cstdint>
#include <random>
#include <string_view>

#include "sphlab/ncmax.hpp"

namespace sphlab::lab {

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64/splitmix64-split";

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  std::uint64_t seed() const noexcept { return seed_; }
  Rng split(std::uint64_t stream) const { return Rng(splitmix64(seed_ ^ splitmix64(stream + 1))); }

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  /// Uniform on [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }
  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Hermitian matrix with independent uniform [-1, 1] real and imaginary parts.
Matrix random_hermitian(Rng& rng, int n);

}  // namespace sphlab::lab
