#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "sphlab/gauss.hpp"

using namespace sphlab;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Direct d-dimensional sum q^{-d} sum_{n in (Z/q)^d} e^{2 pi i (a|n|^2 + n.l) / q}.
Complex direct_gauss(std::int64_t a, std::int64_t q, const std::vector<std::int64_t>& ell) {
  const std::size_t d = ell.size();
  std::vector<std::int64_t> n(d, 0);
  Complex sum{0.0, 0.0};
  while (true) {
    std::int64_t phase = 0;
    for (std::size_t i = 0; i < d; ++i) phase += a * n[i] * n[i] + n[i] * ell[i];
    sum += std::polar(1.0, kTwoPi * static_cast<double>(((phase % q) + q) % q) / static_cast<double>(q));
    std::size_t i = 0;
    while (i < d && ++n[i] == q) n[i++] = 0;
    if (i == d) break;
  }
  return sum / std::pow(static_cast<double>(q), static_cast<double>(d));
}

}  // namespace

TEST(GaussSum1d, SmallValues) {
  EXPECT_NEAR(std::abs(gauss_sum_1d(1, 1, 0) - Complex(1.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(gauss_sum_1d(1, 2, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(gauss_sum_1d(1, 3, 0) - Complex(0.0, 1.0 / std::sqrt(3.0))), 0.0, 1e-15);
}

TEST(GaussSum, Examples) {
  EXPECT_NEAR(std::abs(gauss_sum(1, 1, std::vector<std::int64_t>(5, 0)) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(gauss_sum(1, 3, std::vector<std::int64_t>{0, 0}) - Complex(-1.0 / 3.0, 0.0)), 0.0, 1e-15);
  const std::vector<std::int64_t> ell{1, 0, 0, 0, 0};
  const Complex g = gauss_sum(2, 3, ell);
  EXPECT_NEAR(std::abs(g), std::pow(3.0, -2.5), 1e-15);
  EXPECT_NEAR(std::abs(g - direct_gauss(2, 3, ell)), 0.0, 1e-14);
}

TEST(GaussSum, MatchesDirectSum) {
  for (std::int64_t q = 1; q <= 9; ++q) {
    for (std::int64_t a = 0; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      for (const auto& ell : {std::vector<std::int64_t>{0, 1}, std::vector<std::int64_t>{-3, 5},
                              std::vector<std::int64_t>{2, 7, -1}}) {
        EXPECT_NEAR(std::abs(gauss_sum(a, q, ell) - direct_gauss(a, q, ell)), 0.0, 1e-13) << a << "/" << q;
      }
    }
  }
}

TEST(GaussSum, MagnitudeDependsOnParityOfQ) {
  // |g| = q^{-1/2} for odd q; for even q it is 0 or (2/q)^{1/2}.
  for (std::int64_t q = 1; q <= 30; ++q) {
    for (std::int64_t a = 1; a < std::max<std::int64_t>(q, 2); ++a) {
      if (std::gcd(a, q) != 1) continue;
      for (std::int64_t l = 0; l < q; ++l) {
        const double m = std::abs(gauss_sum_1d(a, q, l));
        if (q % 2 == 1) {
          EXPECT_NEAR(m, 1.0 / std::sqrt(static_cast<double>(q)), 1e-13);
        } else {
          EXPECT_TRUE(m < 1e-13 || std::abs(m - std::sqrt(2.0 / static_cast<double>(q))) < 1e-13) << a << " " << q;
        }
      }
    }
  }
}

TEST(GaussSum, RequiresCoprimeNumerator) { EXPECT_THROW(gauss_sum_1d(2, 4, 0), std::invalid_argument); }

TEST(GaussDft, Examples) {
  // |k|^2 a / q = 4/3, so the phase is e^{2 pi i / 3}.
  EXPECT_NEAR(std::abs(gauss_dft(1, 3, std::vector<std::int64_t>{2}) - std::polar(1.0, kTwoPi * 4.0 / 3.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(gauss_dft(1, 3, std::vector<std::int64_t>{2}) - std::polar(1.0, kTwoPi / 3.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(gauss_dft(1, 1, std::vector<std::int64_t>{0, 0}) - 1.0), 0.0, 1e-15);
  const Complex v = gauss_dft(3, 7, std::vector<std::int64_t>(5, 1));
  EXPECT_NEAR(std::abs(v - std::polar(1.0, kTwoPi / 7.0)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(v), 1.0, 1e-13);
}

TEST(GaussTable, AgreesWithOneDimensionalSums) {
  const GaussTable table(5, 12);
  for (std::int64_t l = -30; l <= 30; ++l) EXPECT_EQ(table(l), gauss_sum_1d(5, 12, l));
}

TEST(UnitPhase, ReducesLargeNumerators) {
  const std::int64_t big = 1'000'000'007LL * 9;
  EXPECT_NEAR(std::abs(unit_phase(big + 1, 9) - unit_phase(1, 9)), 0.0, 1e-15);
  EXPECT_EQ(mod_floor(-1, 7), 6);
}
