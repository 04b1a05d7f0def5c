#pragma once

// Normalized quadratic Gauss sums
//   G(a/q, l) = q^{-d} sum_{n in (Z/q)^d} e^{2 pi i (|n|^2 a + n.l) / q}
// evaluated through the 1-d factorization.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace sphlab {

using Complex = std::complex<double>;

/// e^{2 pi i num / den}, with num reduced mod den before scaling so the phase
/// error does not grow with |num|.
Complex unit_phase(std::int64_t num, std::int64_t den);

/// Reduces x into [0, m).
std::int64_t mod_floor(std::int64_t x, std::int64_t m);

/// q^{-1} sum_{n=0}^{q-1} e^{2 pi i (n^2 a + n l) / q}. Throws
/// std::invalid_argument unless gcd(a, q) = 1.
Complex gauss_sum_1d(std::int64_t a, std::int64_t q, std::int64_t ell);

/// Product of 1-d factors over the coordinates of ell.
Complex gauss_sum(std::int64_t a, std::int64_t q, std::span<const std::int64_t> ell);

/// sum_{l in (Z/q)^d} e^{2 pi i k.l / q} G(a/q, l), evaluated directly and
/// checked against e^{2 pi i |k|^2 a / q}; a relative mismatch above 1e-12
/// throws IdentityViolation.
Complex gauss_dft(std::int64_t a, std::int64_t q, std::span<const std::int64_t> k);

/// Cached 1-d Gauss sums g(l) = gauss_sum_1d(a, q, l) for l in Z/q.
class GaussTable {
 public:
  GaussTable(std::int64_t a, std::int64_t q);

  std::int64_t a() const noexcept { return a_; }
  std::int64_t q() const noexcept { return q_; }
  const Complex& operator()(std::int64_t ell) const {
    return values_[static_cast<std::size_t>(mod_floor(ell, q_))];
  }

 private:
  std::int64_t a_;
  std::int64_t q_;
  std::vector<Complex> values_;
};

}  // namespace sphlab
