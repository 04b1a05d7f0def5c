#pragma once

// Fourier multiplier of convolution with K_s^eps(m) = e^{-2 pi |m|^2 (eps - i s)}:
//   K^_s^eps(xi) = sum_{n in Z^d} e^{-2 pi |n|^2 (eps - i s)} e^{2 pi i n.xi}.
// Two independent evaluations are provided: the lattice theta sum and its
// Poisson-summed form around a rational a/q.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>

#include "sphlab/gauss.hpp"

namespace sphlab {

/// Decomposition s = a/q + t.
struct ArcOffset {
  std::int64_t a = 0;
  std::int64_t q = 1;
  double t = 0.0;
};

struct HeatParams {
  double epsilon = 1.0;
  double s = 0.0;
  std::optional<ArcOffset> arc;

  static HeatParams resolved(double epsilon, std::int64_t a, std::int64_t q, double t) {
    return HeatParams{epsilon, static_cast<double>(a) / static_cast<double>(q) + t, ArcOffset{a, q, t}};
  }
};

struct HeatValue {
  Complex value;
  double truncation_bound = 0.0;  // bound on |omitted terms|
  std::int64_t radius = 0;        // per-coordinate cutoff R, |n_i| <= R
};

inline constexpr double kDefaultTermBudget = 1e9;

/// Lattice-sum form truncated at |n_i| <= R, where R is the smallest radius
/// whose 1-d Gaussian tail falls below tol. The d-dimensional sum is evaluated
/// as a product of 1-d sums. Throws ResourceError if (2R+1)^d exceeds
/// term_budget.
HeatValue heat_multiplier_direct(const HeatParams& params, std::span<const double> xi,
                                 double tol = 1e-15, double term_budget = kDefaultTermBudget);

/// Poisson form
///   (2(eps - i t))^{-d/2} sum_l G(a/q, l) e^{-pi |xi - l/q|^2 / (2(eps - i t))},
/// truncated where the Gaussian magnitude drops below tol. Requires params.arc.
Complex heat_multiplier_poisson(const HeatParams& params, std::span<const double> xi,
                                double tol = 1e-17);

/// Same as above with a prebuilt Gauss table for (a, q).
Complex heat_multiplier_poisson(double epsilon, double t, const GaussTable& gauss,
                                std::span<const double> xi, double tol = 1e-17);

}  // namespace sphlab
