#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "sphlab/error.hpp"
#include "sphlab/lab/oracles.hpp"
#include "sphlab/lattice.hpp"

using namespace sphlab;

namespace {

std::vector<std::vector<int>> points_of(const SphereShell& shell) {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < shell.size(); ++i) {
    const auto p = shell.point(i);
    out.emplace_back(p.begin(), p.end());
  }
  return out;
}

}  // namespace

TEST(RepCounts, SmallValues) {
  EXPECT_EQ(rep_counts(1, 4).counts[4], 2u);
  EXPECT_EQ(rep_counts(5, 1).counts[1], 10u);
  EXPECT_EQ(rep_counts(5, 2).counts[2], 40u);
  EXPECT_EQ(rep_counts(3, 7)[7], 0u);  // 7 is not a sum of three squares
  EXPECT_EQ(rep_count(4, 0), 1u);
}

TEST(RepCounts, MatchBoxEnumeration) {
  for (int d = 1; d <= 5; ++d) {
    const auto table = rep_counts(d, 50);
    const auto brute = lab::brute_force_rep_counts(d, 50);
    for (std::int64_t k = 0; k <= 50; ++k) EXPECT_EQ(table[k], brute[static_cast<std::size_t>(k)]) << d << " " << k;
  }
}

TEST(RepCounts, FourSquaresAtPrimes) {
  // r_4(p) = 8 (p + 1) for odd primes p.
  for (const std::int64_t p : {3, 5, 7, 11, 13, 97}) EXPECT_EQ(rep_count(4, p), static_cast<std::uint64_t>(8 * (p + 1)));
}

TEST(RepCounts, FiveDimensionalGrowthBand) {
  double lo = 1e300;
  double hi = 0.0;
  for (std::int64_t k = 10; k <= 200; ++k) {
    const double ratio = static_cast<double>(rep_count(5, k)) / std::pow(static_cast<double>(k), 1.5);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  EXPECT_LT(hi / lo, 50.0);
}

TEST(RepCounts, RejectsBadArguments) {
  EXPECT_THROW(rep_counts(0, 3), std::invalid_argument);
  EXPECT_THROW(rep_counts(2, -1), std::invalid_argument);
}

TEST(SphereShell, Origin) {
  const auto shell = sphere_shell(2, 0);
  ASSERT_EQ(shell.size(), 1u);
  EXPECT_EQ(points_of(shell)[0], (std::vector<int>{0, 0}));
}

TEST(SphereShell, RadiusFiveInThePlane) {
  const auto pts = points_of(sphere_shell(2, 25));
  ASSERT_EQ(pts.size(), 12u);
  for (const auto& want : {std::vector<int>{3, 4}, std::vector<int>{-3, 4}, std::vector<int>{5, 0}}) {
    EXPECT_NE(std::find(pts.begin(), pts.end(), want), pts.end());
  }
  EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
}

TEST(SphereShell, UnitVectors) {
  const auto pts = points_of(sphere_shell(5, 1));
  ASSERT_EQ(pts.size(), 10u);
  for (const auto& p : pts) {
    int nonzero = 0;
    for (const int c : p) nonzero += c != 0 ? 1 : 0;
    EXPECT_EQ(nonzero, 1);
  }
}

TEST(SphereShell, ClosedUnderSignedPermutations) {
  for (const auto& [d, k] : std::vector<std::pair<int, std::int64_t>>{{3, 14}, {4, 9}, {5, 6}}) {
    const auto pts = points_of(sphere_shell(d, k));
    const std::set<std::vector<int>> set(pts.begin(), pts.end());
    for (auto p : pts) {
      auto q = p;
      q[0] = -q[0];
      EXPECT_TRUE(set.count(q));
      std::swap(p[0], p[static_cast<std::size_t>(d) - 1]);
      EXPECT_TRUE(set.count(p));
    }
  }
}

TEST(SphereShell, BudgetIsEnforced) {
  EXPECT_THROW(sphere_shell(5, 50, 100), ResourceError);
}
