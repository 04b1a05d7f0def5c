#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>

#include "sphlab/cutoff.hpp"
#include "sphlab/error.hpp"
#include "sphlab/heat.hpp"
#include "sphlab/multiplier.hpp"
#include "sphlab/quadrature.hpp"
#include "sphlab/sphere_ft.hpp"

namespace sphlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex phase(double turns) {
  const double reduced = turns - std::round(turns);
  return {std::cos(kTwoPi * reduced), std::sin(kTwoPi * reduced)};
}

}  // namespace

SphereScale SphereScale::make(int d, std::int64_t k) {
  if (d < 1) throw std::invalid_argument("SphereScale: dimension must be positive");
  if (k < 1) throw std::invalid_argument("SphereScale: k must be positive");
  const std::uint64_t rep = sphlab::rep_count(d, k);
  if (rep == 0) throw std::domain_error("SphereScale: r_d(k) = 0 for k = " + std::to_string(k));
  const double lambda = std::sqrt(static_cast<double>(k));
  return SphereScale{d, k, lambda, rep,
                     sphere_constant(d) * std::pow(lambda, d - 2) / static_cast<double>(rep)};
}

Complex exact_multiplier(const SphereShell& shell, std::span<const double> xi) {
  if (xi.size() != static_cast<std::size_t>(shell.dimension())) {
    throw DimensionMismatch("exact_multiplier: xi has wrong dimension");
  }
  if (shell.empty()) throw std::domain_error("exact_multiplier: empty shell");
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < shell.size(); ++i) {
    const auto m = shell.point(i);
    double turns = 0.0;
    for (std::size_t c = 0; c < xi.size(); ++c) turns += m[c] * xi[c];
    acc += phase(turns);
  }
  return acc / static_cast<double>(shell.size());
}

Complex exact_multiplier_at(const SphereShell& shell, std::span<const int> j, int side) {
  if (j.size() != static_cast<std::size_t>(shell.dimension())) {
    throw DimensionMismatch("exact_multiplier_at: frequency has wrong dimension");
  }
  if (shell.empty()) throw std::domain_error("exact_multiplier_at: empty shell");
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < shell.size(); ++i) {
    const auto m = shell.point(i);
    std::int64_t dot = 0;
    for (std::size_t c = 0; c < j.size(); ++c) dot += static_cast<std::int64_t>(m[c]) * j[c];
    acc += unit_phase(dot, side);
  }
  return acc / static_cast<double>(shell.size());
}

Complex arc_multiplier(const SphereScale& scale, const MajorArc& arc, std::span<const double> xi,
                       double epsilon, const QuadratureSpec& quad) {
  if (xi.size() != static_cast<std::size_t>(scale.dimension)) {
    throw DimensionMismatch("arc_multiplier: xi has wrong dimension");
  }
  const double order = static_cast<double>(arc.order);
  const double expected_eps = 1.0 / (order * order);
  if (std::abs(epsilon - expected_eps) > 1e-12 * expected_eps) {
    throw std::invalid_argument("arc_multiplier: epsilon must equal order^-2");
  }
  const std::int64_t a = arc.center.a;
  const std::int64_t q = arc.center.q;
  const std::int64_t k = scale.radius_sq;
  const Rational center(a, q);
  const double t_lo = boost::rational_cast<double>(arc.left - center);
  const double t_hi = boost::rational_cast<double>(arc.right - center);

  const GaussTable gauss(a, q);
  const GaussLegendreRule rule(quad.order);
  auto integrand = [&](double t) {
    return phase(-static_cast<double>(k) * t) * heat_multiplier_poisson(epsilon, t, gauss, xi);
  };
  // The integrand oscillates with period 1/k and the heat factor varies on scale eps + |t|.
  const double width = std::min(quad.oscillation_fraction / static_cast<double>(k),
                                quad.heat_fraction * epsilon);
  const Complex integral = integrate_panels(rule, integrand, t_lo, t_hi, width, quad.panel_budget);

  const double growth = std::exp(kTwoPi * epsilon * static_cast<double>(k));
  return unit_phase(-mod_floor(k, q) * mod_floor(a, q), q) * integral * growth /
         static_cast<double>(scale.rep_count);
}

Complex approx_arc_multiplier(const SphereScale& scale, const GaussTable& gauss,
                              std::span<const double> xi) {
  if (xi.size() != static_cast<std::size_t>(scale.dimension)) {
    throw DimensionMismatch("approx_arc_multiplier: xi has wrong dimension");
  }
  const std::int64_t q = gauss.q();
  const auto qd = static_cast<double>(q);
  Complex g{1.0, 0.0};
  double cut = 1.0;
  double norm_sq = 0.0;
  for (const double x : xi) {
    const auto ell = static_cast<std::int64_t>(std::llround(qd * x));
    const double offset = x - static_cast<double>(ell) / qd;
    cut *= bump_1d(CutoffKind::kPhi, qd * offset);
    if (cut == 0.0) return {0.0, 0.0};
    g *= gauss(ell);
    norm_sq += offset * offset;
  }
  const double sigma = sphere_ft_radial(scale.dimension, scale.lambda * std::sqrt(norm_sq));
  const Complex arc_phase =
      unit_phase(-mod_floor(scale.radius_sq, q) * mod_floor(gauss.a(), q), q);
  return arc_phase * g * cut * scale.main_term_factor * sigma;
}

Complex approx_arc_multiplier(const SphereScale& scale, std::int64_t a, std::int64_t q,
                              std::span<const double> xi) {
  return approx_arc_multiplier(scale, GaussTable(a, q), xi);
}

double approx_arc_envelope(const SphereScale& scale, std::int64_t q) {
  const double half_d = 0.5 * scale.dimension;
  return std::pow(2.0, half_d) * std::pow(static_cast<double>(q), -half_d) * scale.main_term_factor;
}

double approx_tail_bound(const SphereScale& scale, std::int64_t q_max) {
  const double half_d = 0.5 * scale.dimension;
  if (half_d <= 2.0) return std::numeric_limits<double>::infinity();
  // At most q - 1 numerators per q, each below the envelope, and
  // sum_{q > Q} q^{1 - d/2} <= Q^{2 - d/2} / (d/2 - 2).
  const double c_env = std::pow(2.0, half_d) * scale.main_term_factor;
  return c_env * std::pow(static_cast<double>(q_max), 2.0 - half_d) / (half_d - 2.0);
}

Approximant::Approximant(const SphereScale& scale, const ApproxOptions& options) : scale_(scale) {
  if (options.q_max > 0) {
    q_max_ = options.q_max;
  } else {
    const double half_d = 0.5 * scale.dimension;
    if (half_d <= 2.0) {
      throw std::domain_error("approx_total: automatic q_max needs d >= 5");
    }
    if (!(options.tail_tol > 0.0)) throw std::invalid_argument("approx_total: tail_tol must be positive");
    const double c_env = std::pow(2.0, half_d) * scale.main_term_factor;
    const double q_real =
        std::pow(c_env / ((half_d - 2.0) * options.tail_tol), 1.0 / (half_d - 2.0));
    if (q_real > static_cast<double>(options.q_budget)) {
      throw ResourceError("approx_total: tail tolerance needs q_max = " + std::to_string(q_real) +
                          " above the budget " + std::to_string(options.q_budget));
    }
    q_max_ = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(q_real)));
  }
  if (q_max_ > options.q_budget) {
    throw ResourceError("approx_total: q_max exceeds q_budget");
  }
  tail_bound_ = approx_tail_bound(scale, q_max_);

  terms_by_q_.resize(static_cast<std::size_t>(q_max_));
  for (std::int64_t q = 1; q <= q_max_; ++q) {
    auto& bucket = terms_by_q_[static_cast<std::size_t>(q - 1)];
    const std::int64_t a_lo = q == 1 ? 0 : 1;
    const std::int64_t a_hi = q == 1 && options.counting == EndpointCounting::kLiteral ? 1 : q - 1;
    for (std::int64_t a = a_lo; a <= std::max(a_lo, a_hi); ++a) {
      if (std::gcd(a, q) != 1) continue;
      bucket.push_back(Term{unit_phase(-mod_floor(scale.radius_sq, q) * a, q), GaussTable(a, q)});
    }
  }
}

ApproxTotal Approximant::operator()(std::span<const double> xi) const {
  if (xi.size() != static_cast<std::size_t>(scale_.dimension)) {
    throw DimensionMismatch("approx_total: xi has wrong dimension");
  }
  Complex total{0.0, 0.0};
  for (std::int64_t q = 1; q <= q_max_; ++q) {
    const auto qd = static_cast<double>(q);
    // The cutoff and J_lambda factors depend only on q.
    double cut = 1.0;
    double norm_sq = 0.0;
    for (const double x : xi) {
      const double offset = x - std::round(qd * x) / qd;
      cut *= bump_1d(CutoffKind::kPhi, qd * offset);
      if (cut == 0.0) break;
      norm_sq += offset * offset;
    }
    if (cut == 0.0) continue;
    const double radial = cut * scale_.main_term_factor *
                          sphere_ft_radial(scale_.dimension, scale_.lambda * std::sqrt(norm_sq));
    for (const Term& term : terms_by_q_[static_cast<std::size_t>(q - 1)]) {
      Complex g{1.0, 0.0};
      for (const double x : xi) g *= term.gauss(std::llround(qd * x));
      total += term.phase * g * radial;
    }
  }
  return ApproxTotal{total, q_max_, tail_bound_};
}

ApproxTotal approx_total(const SphereScale& scale, std::span<const double> xi,
                         const ApproxOptions& options) {
  return Approximant(scale, options)(xi);
}

}  // namespace sphlab
