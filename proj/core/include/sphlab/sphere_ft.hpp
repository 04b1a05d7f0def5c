#pragma once

// Fourier transform of the normalized surface measure on the sphere of radius
// lambda in R^d:
//   sigma^_lambda(xi) = sigma^(lambda xi),
//   sigma^(eta) = Gamma(d/2) (pi |eta|)^{1 - d/2} J_{d/2 - 1}(2 pi |eta|).

#include <cstdint>
#include <span>

namespace sphlab {

/// sigma^ as a function of r = |eta|. Uses the power series near 0, the
/// elementary closed forms for d = 3 and d = 5, and std::cyl_bessel_j otherwise.
double sphere_ft_radial(int d, double r);

double sphere_ft(int d, double lambda, std::span<const double> xi);

/// c_d = pi^{d/2} / Gamma(d/2).
double sphere_constant(int d);

/// c_d lambda^{d-2} sigma^_lambda(xi) / r_d(k), lambda = sqrt(k). Throws
/// std::domain_error when r_d(k) = 0.
double j_lambda(int d, std::int64_t k, std::span<const double> xi);

/// Overload with r_d(k) supplied by the caller.
double j_lambda(int d, std::int64_t k, std::uint64_t rep_count, std::span<const double> xi);

}  // namespace sphlab
