#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "sphlab/error.hpp"
#include "sphlab/lab/rng.hpp"
#include "sphlab/lattice.hpp"
#include "sphlab/multiplier.hpp"
#include "sphlab/torus.hpp"

using namespace sphlab;

namespace {

LatticeFunction random_function(int d, int side, int n, std::uint64_t seed) {
  lab::Rng rng(seed);
  LatticeFunction f(d, side, n);
  for (auto& v : f.data()) v = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return f;
}

// Direct torus convolution r^{-1} sum_m f(n - m).
LatticeFunction direct_convolve(const SphereShell& shell, const LatticeFunction& f) {
  const FrequencyGrid& grid = f.grid();
  LatticeFunction out(f.dimension(), f.side(), f.matrix_dim());
  for (std::size_t s = 0; s < grid.size(); ++s) {
    const auto n = grid.index(s);
    for (std::size_t i = 0; i < shell.size(); ++i) {
      const auto m = shell.point(i);
      std::vector<std::int64_t> shifted(n.size());
      for (std::size_t c = 0; c < n.size(); ++c) shifted[c] = n[c] - m[c];
      const std::size_t src = grid.wrap(shifted);
      for (int r = 0; r < f.matrix_dim(); ++r) {
        for (int c = 0; c < f.matrix_dim(); ++c) out.at(s, r, c) += f.at(src, r, c);
      }
    }
  }
  for (auto& v : out.data()) v /= static_cast<double>(shell.size());
  return out;
}

}  // namespace

TEST(FrequencyGrid, IndexRoundTrip) {
  const FrequencyGrid grid(3, 5);
  EXPECT_EQ(grid.size(), 125u);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ(grid.flat(grid.index(i)), i);
  EXPECT_EQ(grid.index(1), (std::vector<int>{0, 0, 1}));
  const std::vector<std::int64_t> negative{-1, 6, -10};
  EXPECT_EQ(grid.index(grid.wrap(negative)), (std::vector<int>{4, 1, 0}));
  for (const double x : grid.frequency(grid.size() - 1)) EXPECT_DOUBLE_EQ(x, 0.8);
}

TEST(ApplyMultiplier, ConstantOneIsIdentity) {
  const FrequencyGrid grid(2, 6);
  const auto field = sample_field(grid, [](std::span<const double>) { return Complex(1.0, 0.0); }, "one");
  const auto f = random_function(2, 6, 2, 3);
  EXPECT_LT(apply_multiplier(field, f).max_abs_diff(f), 1e-14);
}

TEST(ApplyMultiplier, ExactFieldOnDeltaGivesKernel) {
  const int side = 7;
  const SphereShell shell = sphere_shell(3, 2);
  const FrequencyGrid grid(3, side);
  const auto field = sample_exact_multiplier(grid, shell);
  const auto out = apply_multiplier(field, LatticeFunction::delta(3, side));
  LatticeFunction kernel(3, side);
  for (std::size_t i = 0; i < shell.size(); ++i) {
    const auto m = shell.point(i);
    const std::vector<std::int64_t> n(m.begin(), m.end());
    kernel.at(grid.wrap(n)) += 1.0 / static_cast<double>(shell.size());
  }
  EXPECT_LT(out.max_abs_diff(kernel), 1e-14);
}

TEST(ApplyMultiplier, SampledFieldMatchesPointwiseMultiplier) {
  const FrequencyGrid grid(2, 8);
  const SphereShell shell = sphere_shell(2, 5);
  const auto fft = sample_exact_multiplier(grid, shell);
  const auto direct = sample_field(grid, [&](std::span<const double> xi) { return exact_multiplier(shell, xi); }, "m");
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(std::abs(fft.values[i] - direct.values[i]), 0.0, 1e-14);
}

TEST(ApplyMultiplier, LinearAndTranslationCovariant) {
  const int side = 6;
  const FrequencyGrid grid(2, side);
  const auto field = sample_exact_multiplier(grid, sphere_shell(2, 5));
  const auto f = random_function(2, side, 1, 11);
  const auto g = random_function(2, side, 1, 12);
  LatticeFunction combo(2, side);
  for (std::size_t i = 0; i < combo.data().size(); ++i) combo.data()[i] = 2.0 * f.data()[i] - Complex(0, 1) * g.data()[i];
  const auto tf = apply_multiplier(field, f);
  const auto tg = apply_multiplier(field, g);
  LatticeFunction expect(2, side);
  for (std::size_t i = 0; i < expect.data().size(); ++i) expect.data()[i] = 2.0 * tf.data()[i] - Complex(0, 1) * tg.data()[i];
  EXPECT_LT(apply_multiplier(field, combo).max_abs_diff(expect), 1e-13);

  auto shift = [&](const LatticeFunction& h) {
    LatticeFunction out(2, side);
    for (std::size_t s = 0; s < grid.size(); ++s) {
      const auto n = grid.index(s);
      const std::vector<std::int64_t> moved{n[0] + 2, n[1] - 1};
      out.at(grid.wrap(moved)) = h.at(s);
    }
    return out;
  };
  EXPECT_LT(apply_multiplier(field, shift(f)).max_abs_diff(shift(tf)), 1e-13);
}

TEST(SphericalConvolve, ConstantIsFixed) {
  const auto one = LatticeFunction::constant(3, 9, 1.0);
  EXPECT_LT(spherical_convolve(sphere_shell(3, 6), one).max_abs_diff(one), 1e-15);
}

TEST(SphericalConvolve, DeltaSpreadsOverUnitVectors) {
  const int side = 5;
  const auto out = spherical_convolve(sphere_shell(5, 1), LatticeFunction::delta(5, side));
  const FrequencyGrid& grid = out.grid();
  int hits = 0;
  for (std::size_t s = 0; s < grid.size(); ++s) {
    const auto n = grid.index(s);
    int dist = 0;
    for (const int c : n) dist += std::min(c, side - c) * std::min(c, side - c);
    if (dist == 1) {
      EXPECT_NEAR(std::abs(out.at(s) - 0.1), 0.0, 1e-16);
      ++hits;
    } else {
      EXPECT_EQ(out.at(s), Complex(0.0, 0.0));
    }
  }
  EXPECT_EQ(hits, 10);
}

TEST(SphericalConvolve, MatchesFftAndDirectForMatrixValues) {
  const int side = 6;
  const SphereShell shell = sphere_shell(3, 3);
  const auto f = random_function(3, side, 2, 5);
  const auto direct = direct_convolve(shell, f);
  EXPECT_LT(spherical_convolve(shell, f).max_abs_diff(direct), 1e-14);
  const auto field = sample_exact_multiplier(FrequencyGrid(3, side), shell);
  EXPECT_LT(apply_multiplier(field, f).max_abs_diff(direct), 1e-13);
}

TEST(SphericalConvolve, WarnsOnWrapAround) {
  std::vector<std::string> warnings;
  spherical_convolve(sphere_shell(2, 25), LatticeFunction::delta(2, 8), &warnings);
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_TRUE(shell_wraps(sphere_shell(2, 25), 8));
  warnings.clear();
  spherical_convolve(sphere_shell(2, 1), LatticeFunction::delta(2, 8), &warnings);
  EXPECT_TRUE(warnings.empty());
}

TEST(LatticeFunction, ShapeChecks) {
  LatticeFunction a(2, 4, 2);
  const LatticeFunction b(2, 5, 2);
  EXPECT_THROW(a.max_abs_diff(b), DimensionMismatch);
  Eigen::MatrixXcd m(2, 2);
  m << 1.0, Complex(0, 2), 3.0, 4.0;
  a.set_matrix(3, m);
  EXPECT_EQ(a.matrix_at(3), m);
  EXPECT_EQ(a.at(3, 0, 1), Complex(0, 2));
}
