#include "sphlab/heat.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sphlab/error.hpp"

namespace sphlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Bound on 2 sum_{n > R} e^{-2 pi eps n^2}: consecutive ratios are at most
// e^{-2 pi eps (2R + 3)} beyond R + 1, so a geometric series dominates.
double gaussian_tail(double epsilon, std::int64_t radius) {
  const double first = std::exp(-kTwoPi * epsilon * static_cast<double>((radius + 1) * (radius + 1)));
  const double ratio = std::exp(-kTwoPi * epsilon * static_cast<double>(2 * radius + 3));
  return 2.0 * first / (1.0 - ratio);
}

Complex phase(double turns) {
  const double reduced = turns - std::round(turns);
  return {std::cos(kTwoPi * reduced), std::sin(kTwoPi * reduced)};
}

}  // namespace

HeatValue heat_multiplier_direct(const HeatParams& params, std::span<const double> xi, double tol,
                                 double term_budget) {
  const double eps = params.epsilon;
  if (!(eps > 0.0)) throw std::invalid_argument("heat_multiplier_direct: epsilon must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("heat_multiplier_direct: tol must be positive");
  const auto d = static_cast<double>(xi.size());

  std::int64_t radius = 0;
  while (gaussian_tail(eps, radius) > tol) {
    ++radius;
    if (std::pow(2.0 * static_cast<double>(radius) + 1.0, d) > term_budget) {
      throw ResourceError("heat_multiplier_direct: (2R+1)^d exceeds term budget for epsilon = " +
                          std::to_string(eps));
    }
  }

  // Squared-index phase: exact residue when s is arc-resolved, plain float otherwise.
  auto square_phase = [&](std::int64_t n) -> Complex {
    const std::int64_t n2 = n * n;
    if (params.arc) {
      return unit_phase(n2 * params.arc->a, params.arc->q) * phase(params.arc->t * static_cast<double>(n2));
    }
    return phase(params.s * static_cast<double>(n2));
  };

  double theta_abs = 0.0;
  for (std::int64_t n = -radius; n <= radius; ++n) {
    theta_abs += std::exp(-kTwoPi * eps * static_cast<double>(n * n));
  }

  Complex product{1.0, 0.0};
  for (const double x : xi) {
    Complex factor{0.0, 0.0};
    for (std::int64_t n = -radius; n <= radius; ++n) {
      const double weight = std::exp(-kTwoPi * eps * static_cast<double>(n * n));
      factor += weight * square_phase(n) * phase(static_cast<double>(n) * x);
    }
    product *= factor;
  }

  const double tail = gaussian_tail(eps, radius);
  const double bound = std::pow(theta_abs + tail, d) - std::pow(theta_abs, d);
  return HeatValue{product, bound, radius};
}

Complex heat_multiplier_poisson(double epsilon, double t, const GaussTable& gauss,
                                std::span<const double> xi, double tol) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("heat_multiplier_poisson: epsilon must be positive");
  const Complex z{epsilon, -t};
  const Complex w = 1.0 / (2.0 * z);
  const double decay = w.real();  // eps / (2 (eps^2 + t^2))
  const double reach = std::sqrt(-std::log(tol) / (std::numbers::pi * decay));
  const auto q = static_cast<double>(gauss.q());

  Complex product{1.0, 0.0};
  for (const double x : xi) {
    const auto lo = static_cast<std::int64_t>(std::ceil(q * (x - reach)));
    const auto hi = static_cast<std::int64_t>(std::floor(q * (x + reach)));
    Complex factor{0.0, 0.0};
    for (std::int64_t l = lo; l <= hi; ++l) {
      const double dx = x - static_cast<double>(l) / q;
      factor += gauss(l) * std::exp(-std::numbers::pi * dx * dx * w);
    }
    product *= factor;
  }
  const Complex prefactor = std::exp(-0.5 * static_cast<double>(xi.size()) * std::log(2.0 * z));
  return prefactor * product;
}

Complex heat_multiplier_poisson(const HeatParams& params, std::span<const double> xi, double tol) {
  if (!params.arc) throw std::invalid_argument("heat_multiplier_poisson: params must be arc-resolved");
  const GaussTable gauss(params.arc->a, params.arc->q);
  return heat_multiplier_poisson(params.epsilon, params.arc->t, gauss, xi, tol);
}

}  // namespace sphlab
