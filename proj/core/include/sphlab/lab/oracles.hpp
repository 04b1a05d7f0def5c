#pragma once

// Independent reference computations. Each avoids the code path it checks.

#include <cstdint>
#include <span>
#include <vector>

#include "sphlab/farey.hpp"
#include "sphlab/lab/rng.hpp"
#include "sphlab/multiplier.hpp"
#include "sphlab/ncmax.hpp"

namespace sphlab::lab {

/// r_d(k) for k = 0..max_k by enumerating the box [-R, R]^d, R = floor(sqrt(max_k)).
std::vector<std::uint64_t> brute_force_rep_counts(int d, std::int64_t max_k);

/// Mean of cos(2 pi r w_i) over Gaussian-normalised uniform points w of the
/// unit sphere, averaged over all d coordinates of each sample.
double sphere_ft_monte_carlo(int d, double r, std::size_t samples, Rng& rng);

/// Integral of e^{2 pi i eta.w} over the unit sphere in hyperspherical
/// coordinates (Gauss-Legendre panels in the polar angles, trapezoid in the
/// azimuth), divided by the sphere area computed with the same rule.
double sphere_ft_product_quadrature(std::span<const double> eta, int panels = 3);

struct LineIntegral {
  Complex value;
  double tail_bound = 0.0;
  std::int64_t panels = 0;
};

/// e^{2 pi eps k} / r_d(k) * int_{-T}^{T} (2(eps - it))^{-d/2}
///   e^{-pi |xi|^2 / (2(eps - it))} e^{-2 pi i k t} dt,
/// with the |t| > T contribution bounded by the analytic tail.
LineIntegral j_lambda_line_integral(int d, std::int64_t k, std::span<const double> xi, double epsilon,
                                    double cutoff_t = 1000.0);

/// The arc piece from the lattice series: integrating
/// e^{-2 pi i k s} sum_n e^{-2 pi |n|^2 (eps - is)} e^{2 pi i n.xi} term by term over
/// the arc gives sum_j e^{-2 pi eps j} S_j(xi) int_I e^{2 pi i (j - k) s} ds with
/// S_j the shell exponential sums.
Complex arc_multiplier_series(const SphereScale& scale, const MajorArc& arc, std::span<const double> xi,
                              double epsilon, double tol = 1e-16);

/// Minimum of ||a||_p over 2 x 2 hermitian a = [[u, v + iw], [v - iw, z]] with
/// a -+ x_j >= 0, by coarse-to-fine grid search over (u, v, w, z).
double ncmax_grid_oracle_2x2(const std::vector<Matrix>& family, double p, int rounds = 14, int points = 17);

}  // namespace sphlab::lab
