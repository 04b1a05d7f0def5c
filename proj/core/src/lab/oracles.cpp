#include "sphlab/lab/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include <boost/rational.hpp>

#include "sphlab/error.hpp"
#include "sphlab/lattice.hpp"
#include "sphlab/quadrature.hpp"

namespace sphlab::lab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Calls visit(n, |n|^2) for every n in Z^d with |n|^2 <= max_sq.
template <class Visit>
void for_each_in_ball(int d, std::int64_t max_sq, Visit&& visit) {
  const auto radius = static_cast<int>(std::floor(std::sqrt(static_cast<double>(max_sq))));
  std::vector<int> n(static_cast<std::size_t>(d), 0);
  std::function<void(int, std::int64_t)> rec = [&](int c, std::int64_t used) {
    if (c == d) {
      visit(n, used);
      return;
    }
    for (int v = -radius; v <= radius; ++v) {
      const std::int64_t next = used + static_cast<std::int64_t>(v) * v;
      if (next > max_sq) continue;
      n[static_cast<std::size_t>(c)] = v;
      rec(c + 1, next);
    }
  };
  rec(0, 0);
}

// int_l^r e^{2 pi i m s} ds with exact phases at rational endpoints.
Complex exponential_integral(std::int64_t m, const Rational& l, const Rational& r) {
  if (m == 0) return {boost::rational_cast<double>(r - l), 0.0};
  const Complex er = unit_phase(m * r.numerator() % r.denominator(), r.denominator());
  const Complex el = unit_phase(m * l.numerator() % l.denominator(), l.denominator());
  return (er - el) / Complex(0.0, kTwoPi * static_cast<double>(m));
}

double psd_2x2_margin(double a, double b, Complex c) {
  // Smallest eigenvalue of [[a, c], [conj c, b]].
  const double mean = 0.5 * (a + b);
  const double half = 0.5 * (a - b);
  return mean - std::sqrt(half * half + std::norm(c));
}

}  // namespace

std::vector<std::uint64_t> brute_force_rep_counts(int d, std::int64_t max_k) {
  if (d < 1 || max_k < 0) throw std::invalid_argument("brute_force_rep_counts: bad arguments");
  const auto radius = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(max_k))));
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_k + 1), 0);
  // Odometer over the full box, no pruning.
  std::vector<std::int64_t> n(static_cast<std::size_t>(d), -radius);
  while (true) {
    std::int64_t sq = 0;
    for (const auto v : n) sq += v * v;
    if (sq <= max_k) ++counts[static_cast<std::size_t>(sq)];
    std::size_t c = n.size();
    while (c > 0) {
      --c;
      if (n[c] < radius) {
        ++n[c];
        break;
      }
      n[c] = -radius;
      if (c == 0) return counts;
    }
  }
}

double sphere_ft_monte_carlo(int d, double r, std::size_t samples, Rng& rng) {
  if (d < 2 || samples == 0) throw std::invalid_argument("sphere_ft_monte_carlo: bad arguments");
  std::vector<double> w(static_cast<std::size_t>(d));
  double acc = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    double norm_sq = 0.0;
    for (auto& v : w) {
      v = rng.normal();
      norm_sq += v * v;
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    double sample = 0.0;
    for (const double v : w) sample += std::cos(kTwoPi * r * v * inv);
    acc += sample / d;
  }
  return acc / static_cast<double>(samples);
}

double sphere_ft_product_quadrature(std::span<const double> eta, int panels) {
  const int d = static_cast<int>(eta.size());
  if (d < 2) throw std::invalid_argument("sphere_ft_product_quadrature: d must be >= 2");
  const GaussLegendreRule rule(30);
  std::vector<double> theta;
  std::vector<double> theta_w;
  const double width = kPi / panels;
  for (int p = 0; p < panels; ++p) {
    for (int i = 0; i < rule.order(); ++i) {
      theta.push_back(width * (p + 0.5 * (rule.nodes()[static_cast<std::size_t>(i)] + 1.0)));
      theta_w.push_back(0.5 * width * rule.weights()[static_cast<std::size_t>(i)]);
    }
  }
  const int azimuth = 96;
  double value = 0.0;
  double area = 0.0;
  // Polar angle at level c contributes w_c = s cos(theta) with weight sin^{d-2-c}(theta).
  std::function<void(int, double, double, double)> rec = [&](int c, double s, double dot, double weight) {
    if (c == d - 2) {
      const double step = kTwoPi / azimuth;
      for (int i = 0; i < azimuth; ++i) {
        const double phi = step * i;
        const double total = dot + s * (eta[static_cast<std::size_t>(d - 2)] * std::cos(phi) +
                                        eta[static_cast<std::size_t>(d - 1)] * std::sin(phi));
        value += weight * step * std::cos(kTwoPi * total);
        area += weight * step;
      }
      return;
    }
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double st = std::sin(theta[i]);
      rec(c + 1, s * st, dot + s * std::cos(theta[i]) * eta[static_cast<std::size_t>(c)],
          weight * theta_w[i] * std::pow(st, d - 2 - c));
    }
  };
  rec(0, 1.0, 0.0, 1.0);
  return value / area;
}

LineIntegral j_lambda_line_integral(int d, std::int64_t k, std::span<const double> xi, double epsilon,
                                    double cutoff_t) {
  if (d < 3) throw std::invalid_argument("j_lambda_line_integral: d must be >= 3");
  const std::uint64_t rep = rep_count(d, k);
  if (rep == 0) throw std::domain_error("j_lambda_line_integral: r_d(k) = 0");
  double xi_sq = 0.0;
  for (const double x : xi) xi_sq += x * x;
  const double half_d = 0.5 * d;
  auto integrand = [&](double t) {
    const Complex z{epsilon, -t};
    const Complex two_z = 2.0 * z;
    const Complex gauss = std::exp(-kPi * xi_sq / two_z - half_d * std::log(two_z));
    const double reduced = static_cast<double>(k) * t - std::round(static_cast<double>(k) * t);
    return gauss * Complex(std::cos(kTwoPi * reduced), -std::sin(kTwoPi * reduced));
  };
  const GaussLegendreRule rule(20);
  LineIntegral out;
  for (const double sign : {1.0, -1.0}) {
    double t = 0.0;
    while (t < cutoff_t) {
      double width = std::min(0.25 / static_cast<double>(k), 0.25 * (epsilon + t));
      if (xi_sq > 0.0) width = std::min(width, (epsilon * epsilon + t * t) / (kPi * xi_sq));
      const double next = std::min(cutoff_t, t + width);
      const Complex piece = rule.integrate(integrand, sign * t, sign * next);
      out.value += sign * piece;
      ++out.panels;
      t = next;
    }
  }
  const double growth = std::exp(kTwoPi * epsilon * static_cast<double>(k)) / static_cast<double>(rep);
  out.value *= growth;
  out.tail_bound = growth * (2.0 / (d - 2.0)) * std::pow(cutoff_t, 1.0 - half_d);
  return out;
}

Complex arc_multiplier_series(const SphereScale& scale, const MajorArc& arc, std::span<const double> xi,
                              double epsilon, double tol) {
  const int d = scale.dimension;
  const std::int64_t k = scale.radius_sq;
  const double length = boost::rational_cast<double>(arc.right - arc.left);
  // Largest |n|^2 kept: stop once the scaled shell mass is below tol.
  const auto counts = rep_counts(d, k + 4096);
  std::int64_t j_max = k;
  while (true) {
    ++j_max;
    if (j_max >= counts.max_k) throw ResourceError("arc_multiplier_series: tolerance needs too many shells");
    const double mass = std::exp(-kTwoPi * epsilon * static_cast<double>(j_max - k)) *
                        static_cast<double>(counts[j_max]) * length / static_cast<double>(scale.rep_count);
    if (j_max > 2 * k + 8 && mass < 1e-3 * tol) break;
  }
  const double radius = std::sqrt(static_cast<double>(j_max));
  if (std::pow(2.0 * radius + 1.0, d) > 5e8) {
    throw ResourceError("arc_multiplier_series: lattice ball too large");
  }
  // Per-coordinate phases e^{2 pi i v xi_c}.
  const auto r = static_cast<int>(std::floor(radius));
  std::vector<std::vector<Complex>> phase(static_cast<std::size_t>(d));
  for (int c = 0; c < d; ++c) {
    for (int v = -r; v <= r; ++v) {
      const double turns = v * xi[static_cast<std::size_t>(c)];
      const double reduced = turns - std::round(turns);
      phase[static_cast<std::size_t>(c)].emplace_back(std::cos(kTwoPi * reduced), std::sin(kTwoPi * reduced));
    }
  }
  std::vector<Complex> shell_sums(static_cast<std::size_t>(j_max + 1));
  for_each_in_ball(d, j_max, [&](const std::vector<int>& n, std::int64_t sq) {
    Complex prod{1.0, 0.0};
    for (int c = 0; c < d; ++c) prod *= phase[static_cast<std::size_t>(c)][static_cast<std::size_t>(n[static_cast<std::size_t>(c)] + r)];
    shell_sums[static_cast<std::size_t>(sq)] += prod;
  });
  Complex total{0.0, 0.0};
  for (std::int64_t j = j_max; j >= 0; --j) {
    const double weight = std::exp(-kTwoPi * epsilon * static_cast<double>(j - k));
    total += weight * shell_sums[static_cast<std::size_t>(j)] * exponential_integral(j - k, arc.left, arc.right);
  }
  return total / static_cast<double>(scale.rep_count);
}

double ncmax_grid_oracle_2x2(const std::vector<Matrix>& family, double p, int rounds, int points) {
  for (const Matrix& x : family) {
    if (x.rows() != 2 || x.cols() != 2) throw DimensionMismatch("ncmax_grid_oracle_2x2: matrices must be 2 x 2");
  }
  if (points < 3 || points % 2 == 0) throw std::invalid_argument("ncmax_grid_oracle_2x2: points must be odd >= 3");
  auto objective = [p](double u, double z, Complex c) {
    const double mean = 0.5 * (u + z);
    const double rad = std::sqrt(0.25 * (u - z) * (u - z) + std::norm(c));
    const double l1 = std::abs(mean + rad);
    const double l2 = std::abs(mean - rad);
    if (std::isinf(p)) return std::max(l1, l2);
    return std::pow(std::pow(l1, p) + std::pow(l2, p), 1.0 / p);
  };
  double scale = 0.0;
  for (const Matrix& x : family) scale = std::max(scale, x.cwiseAbs().maxCoeff());
  if (scale == 0.0) return 0.0;
  auto feasible = [&](double u, double z, Complex c) {
    for (const Matrix& x : family) {
      for (const double sign : {-1.0, 1.0}) {
        const double a = u + sign * x(0, 0).real();
        const double b = z + sign * x(1, 1).real();
        const Complex off = c + sign * x(0, 1);
        if (psd_2x2_margin(a, b, off) < -1e-13 * scale) return false;
      }
    }
    return true;
  };

  // Sum of |x_j| is dominated by 2 * N * scale in every entry.
  const double bound = 2.0 * static_cast<double>(family.size()) * scale;
  std::array<double, 4> centre{bound, 0.0, 0.0, bound};
  std::array<double, 4> half{bound, bound, bound, bound};
  double best = objective(2.0 * bound, 2.0 * bound, {0.0, 0.0});
  std::array<double, 4> best_at{2.0 * bound, 0.0, 0.0, 2.0 * bound};
  const int m = points / 2;
  for (int round = 0; round < rounds; ++round) {
    for (int i0 = -m; i0 <= m; ++i0) {
      const double u = centre[0] + half[0] * i0 / m;
      for (int i1 = -m; i1 <= m; ++i1) {
        const double v = centre[1] + half[1] * i1 / m;
        for (int i2 = -m; i2 <= m; ++i2) {
          const double w = centre[2] + half[2] * i2 / m;
          for (int i3 = -m; i3 <= m; ++i3) {
            const double z = centre[3] + half[3] * i3 / m;
            const Complex c{v, w};
            const double f = objective(u, z, c);
            if (f < best && feasible(u, z, c)) {
              best = f;
              best_at = {u, v, w, z};
            }
          }
        }
      }
    }
    centre = best_at;
    for (auto& h : half) h *= 2.0 / m;
  }
  return best;
}

}  // namespace sphlab::lab
