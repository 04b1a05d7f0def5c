#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "sphlab/error.hpp"
#include "sphlab/farey.hpp"
#include "sphlab/lab/oracles.hpp"
#include "sphlab/lattice.hpp"
#include "sphlab/multiplier.hpp"
#include "sphlab/sphere_ft.hpp"

using namespace sphlab;

namespace {

Complex direct_average(const SphereShell& shell, const std::vector<double>& xi) {
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < shell.size(); ++i) {
    double dot = 0.0;
    const auto m = shell.point(i);
    for (std::size_t c = 0; c < xi.size(); ++c) dot += m[c] * xi[c];
    sum += std::polar(1.0, 2.0 * std::numbers::pi * dot);
  }
  return sum / static_cast<double>(shell.size());
}

}  // namespace

TEST(SphereScale, Fields) {
  const SphereScale s = SphereScale::make(5, 4);
  EXPECT_EQ(s.rep_count, rep_count(5, 4));
  EXPECT_DOUBLE_EQ(s.lambda, 2.0);
  EXPECT_NEAR(s.main_term_factor, sphere_constant(5) * 8.0 / static_cast<double>(s.rep_count), 1e-15);
  EXPECT_THROW(SphereScale::make(3, 7), std::domain_error);
}

TEST(ExactMultiplier, Examples) {
  const SphereShell unit = sphere_shell(5, 1);
  EXPECT_NEAR(std::abs(exact_multiplier(unit, std::vector<double>(5, 0.0)) - 1.0), 0.0, 1e-15);
  const std::vector<double> half{0.5, 0.0, 0.0, 0.0, 0.0};
  EXPECT_NEAR(std::abs(exact_multiplier(unit, half) - 0.6), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(direct_average(unit, half) - 0.6), 0.0, 1e-15);
  const std::vector<double> diag{0.5, 0.5};
  const Complex v = exact_multiplier(sphere_shell(2, 25), diag);
  EXPECT_LT(std::abs(v.imag()), 1e-14);
  EXPECT_NEAR(std::abs(v - direct_average(sphere_shell(2, 25), diag)), 0.0, 1e-14);
}

TEST(ExactMultiplier, GridFormMatchesContinuous) {
  const SphereShell shell = sphere_shell(3, 9);
  const int side = 7;
  for (const std::vector<int>& j : {std::vector<int>{0, 0, 0}, std::vector<int>{1, 2, 3}, std::vector<int>{6, 0, 5}}) {
    std::vector<double> xi;
    for (const int c : j) xi.push_back(static_cast<double>(c) / side);
    EXPECT_NEAR(std::abs(exact_multiplier_at(shell, j, side) - exact_multiplier(shell, xi)), 0.0, 1e-13);
  }
  EXPECT_THROW(exact_multiplier(shell, std::vector<double>{0.1}), DimensionMismatch);
}

TEST(ArcMultiplier, ArcsReconstructExactMultiplier) {
  const std::vector<double> xi{0.13, 0.41, 0.77, 0.05, 0.6};
  for (const std::int64_t k : {1, 2, 3}) {
    const SphereScale scale = SphereScale::make(5, k);
    for (const std::int64_t order : {1, 2, 3}) {
      const double eps = 1.0 / static_cast<double>(order * order);
      Complex sum{0.0, 0.0};
      for (const MajorArc& arc : major_arcs(farey_sequence(order))) {
        const Complex piece = arc_multiplier(scale, arc, xi, eps);
        EXPECT_LT(std::abs(piece - lab::arc_multiplier_series(scale, arc, xi, eps)), 1e-9);
        sum += piece;
      }
      EXPECT_LT(std::abs(sum - exact_multiplier(sphere_shell(5, k), xi)), 1e-9) << k << " " << order;
    }
  }
}

TEST(ArcMultiplier, EpsilonTiedToOrder) {
  const SphereScale scale = SphereScale::make(5, 1);
  const auto arcs = major_arcs(farey_sequence(2));
  EXPECT_THROW(arc_multiplier(scale, arcs[0], std::vector<double>(5, 0.0), 0.5), std::invalid_argument);
}

TEST(ApproxArc, PrincipalTermAtOrigin) {
  for (const std::int64_t k : {1, 4, 9}) {
    const SphereScale scale = SphereScale::make(5, k);
    const std::vector<double> zero(5, 0.0);
    EXPECT_NEAR(std::abs(approx_arc_multiplier(scale, 0, 1, zero) - j_lambda(5, k, zero)), 0.0, 1e-12);
    EXPECT_NEAR(j_lambda(5, k, zero), scale.main_term_factor, 1e-12);
  }
}

TEST(ApproxArc, EnvelopeDominates) {
  const SphereScale scale = SphereScale::make(5, 6);
  for (std::int64_t q = 1; q <= 9; ++q) {
    for (std::int64_t a = 0; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      for (const double x : {0.0, 0.1, 0.33, 0.5, 0.9}) {
        const std::vector<double> xi{x, 0.5 * x, 0.0, 0.2, x};
        EXPECT_LE(std::abs(approx_arc_multiplier(scale, a, q, xi)), approx_arc_envelope(scale, q) * (1 + 1e-12));
      }
    }
  }
}

TEST(ApproxTotal, TailBoundAtQmaxEight) {
  const SphereScale scale = SphereScale::make(5, 4);
  ApproxOptions options;
  options.q_max = 8;
  const ApproxTotal total = approx_total(scale, std::vector<double>(5, 0.0), options);
  EXPECT_EQ(total.q_max, 8);
  EXPECT_TRUE(std::isfinite(total.value.real()));
  EXPECT_NEAR(total.tail_bound, approx_tail_bound(scale, 8), 0.0);
  // The tail bound decays like q_max^{2 - d/2}.
  EXPECT_NEAR(approx_tail_bound(scale, 32) / approx_tail_bound(scale, 8), 0.5, 1e-12);
}

TEST(ApproxTotal, ObservedTailAtOriginIsSmall) {
  // The rigorous envelope tail is loose; the terms actually omitted at xi = 0
  // (estimated against q_max = 512) stay below 0.3 / sqrt(8).
  const SphereScale scale = SphereScale::make(5, 4);
  const std::vector<double> zero(5, 0.0);
  ApproxOptions small;
  small.q_max = 8;
  ApproxOptions large;
  large.q_max = 512;
  const double omitted = std::abs(approx_total(scale, zero, large).value - approx_total(scale, zero, small).value);
  EXPECT_LT(omitted, 0.3 / std::sqrt(8.0));
  EXPECT_GT(approx_tail_bound(scale, 8), omitted);
}

TEST(ApproxTotal, TailBoundInfiniteInLowDimension) {
  EXPECT_TRUE(std::isinf(approx_tail_bound(SphereScale::make(4, 2), 10)));
  EXPECT_THROW(approx_total(SphereScale::make(4, 2), std::vector<double>(4, 0.0)), std::domain_error);
}

TEST(ApproxTotal, AutomaticQmaxMeetsTolerance) {
  const SphereScale scale = SphereScale::make(7, 3);
  ApproxOptions options;
  options.tail_tol = 0.05;
  const Approximant approx(scale, options);
  EXPECT_LE(approx.tail_bound(), 0.05);
  EXPECT_GT(approx_tail_bound(scale, approx.q_max() - 1), 0.05);
  options.q_budget = 2;
  EXPECT_THROW(Approximant(scale, options), ResourceError);
}

TEST(ApproxTotal, LiteralCountingAddsTheSecondEndpoint) {
  const SphereScale scale = SphereScale::make(5, 2);
  const std::vector<double> xi{0.02, 0.0, 0.01, 0.0, 0.0};
  ApproxOptions circle;
  circle.q_max = 5;
  ApproxOptions literal = circle;
  literal.counting = EndpointCounting::kLiteral;
  const Complex diff = approx_total(scale, xi, literal).value - approx_total(scale, xi, circle).value;
  EXPECT_NEAR(std::abs(diff - approx_arc_multiplier(scale, 0, 1, xi)), 0.0, 1e-14);
}

TEST(ApproxTotal, ClassMatchesFreeFunction) {
  const SphereScale scale = SphereScale::make(5, 9);
  ApproxOptions options;
  options.q_max = 6;
  const Approximant approx(scale, options);
  for (const double x : {0.0, 0.17, 0.5}) {
    const std::vector<double> xi{x, 0.25, 0.0, x, 0.1};
    EXPECT_NEAR(std::abs(approx(xi).value - approx_total(scale, xi, options).value), 0.0, 1e-14);
  }
}
