#include "sphlab/sphere_ft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sphlab/lattice.hpp"

namespace sphlab {
namespace {

// Gamma(nu + 1) sum_k (-1)^k u^{2k} / (k! Gamma(k + nu + 1)) with u = pi r;
// the leading term is 1.
double radial_series(double nu, double u) {
  const double u2 = u * u;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 200; ++k) {
    term *= -u2 / ((k + 1.0) * (k + 1.0 + nu));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double sphere_ft_radial(int d, double r) {
  if (d < 2) throw std::invalid_argument("sphere_ft: dimension must be >= 2");
  r = std::abs(r);
  const double nu = 0.5 * d - 1.0;
  const double z = 2.0 * std::numbers::pi * r;
  if (z < 1.0) return radial_series(nu, 0.5 * z);
  if (d == 3) return std::sin(z) / z;
  if (d == 5) return 3.0 * (std::sin(z) - z * std::cos(z)) / (z * z * z);
  return std::tgamma(nu + 1.0) * std::pow(0.5 * z, -nu) * std::cyl_bessel_j(nu, z);
}

double sphere_ft(int d, double lambda, std::span<const double> xi) {
  if (!(lambda > 0.0)) throw std::invalid_argument("sphere_ft: lambda must be positive");
  double norm_sq = 0.0;
  for (const double x : xi) norm_sq += x * x;
  return sphere_ft_radial(d, lambda * std::sqrt(norm_sq));
}

double sphere_constant(int d) {
  return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

double j_lambda(int d, std::int64_t k, std::uint64_t rep, std::span<const double> xi) {
  if (rep == 0) throw std::domain_error("j_lambda: r_d(k) = 0");
  const double lambda = std::sqrt(static_cast<double>(k));
  return sphere_constant(d) * std::pow(lambda, d - 2) * sphere_ft(d, lambda, xi) /
         static_cast<double>(rep);
}

double j_lambda(int d, std::int64_t k, std::span<const double> xi) {
  return j_lambda(d, k, rep_count(d, k), xi);
}

}  // namespace sphlab
