#include "sphlab/gauss.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sphlab/error.hpp"

namespace sphlab {
namespace {

__extension__ typedef __int128 Int128;

void require_coprime(std::int64_t a, std::int64_t q) {
  if (q < 1) throw std::invalid_argument("gauss sum: q must be positive");
  if (std::gcd(a, q) != 1) {
    throw std::invalid_argument("gauss sum: gcd(" + std::to_string(a) + ", " + std::to_string(q) +
                                ") != 1");
  }
}

// (n^2 a + n l) mod q without intermediate overflow.
std::int64_t quadratic_residue(std::int64_t n, std::int64_t a, std::int64_t ell, std::int64_t q) {
  const Int128 v = static_cast<Int128>(n) * n * a + static_cast<Int128>(n) * ell;
  Int128 r = v % q;
  if (r < 0) r += q;
  return static_cast<std::int64_t>(r);
}

}  // namespace

std::int64_t mod_floor(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

Complex unit_phase(std::int64_t num, std::int64_t den) {
  std::int64_t r = mod_floor(num, den);
  // Centre the residue so the angle lies in (-pi, pi].
  if (2 * r > den) r -= den;
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

Complex gauss_sum_1d(std::int64_t a, std::int64_t q, std::int64_t ell) {
  require_coprime(a, q);
  Complex acc{0.0, 0.0};
  for (std::int64_t n = 0; n < q; ++n) acc += unit_phase(quadratic_residue(n, a, ell, q), q);
  return acc / static_cast<double>(q);
}

Complex gauss_sum(std::int64_t a, std::int64_t q, std::span<const std::int64_t> ell) {
  require_coprime(a, q);
  Complex prod{1.0, 0.0};
  for (const std::int64_t l : ell) prod *= gauss_sum_1d(a, q, l);
  return prod;
}

Complex gauss_dft(std::int64_t a, std::int64_t q, std::span<const std::int64_t> k) {
  require_coprime(a, q);
  const GaussTable table(a, q);
  Complex prod{1.0, 0.0};
  Int128 norm_sq = 0;
  for (const std::int64_t ki : k) {
    Complex factor{0.0, 0.0};
    for (std::int64_t l = 0; l < q; ++l) {
      const Int128 kl = static_cast<Int128>(ki) * l;
      factor += unit_phase(static_cast<std::int64_t>(((kl % q) + q) % q), q) * table(l);
    }
    prod *= factor;
    norm_sq += static_cast<Int128>(ki) * ki;
  }
  Int128 exponent = (norm_sq % q) * (static_cast<Int128>(mod_floor(a, q))) % q;
  const Complex expected = unit_phase(static_cast<std::int64_t>(exponent), q);
  if (std::abs(prod - expected) > 1e-12) {
    throw IdentityViolation("gauss_dft: |G^(a/q, k) - e^{2 pi i |k|^2 a/q}| = " +
                            std::to_string(std::abs(prod - expected)));
  }
  return prod;
}

GaussTable::GaussTable(std::int64_t a, std::int64_t q) : a_(a), q_(q) {
  require_coprime(a, q);
  values_.reserve(static_cast<std::size_t>(q));
  for (std::int64_t l = 0; l < q; ++l) values_.push_back(gauss_sum_1d(a, q, l));
}

}  // namespace sphlab
