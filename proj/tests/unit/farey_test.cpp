#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "sphlab/farey.hpp"

using namespace sphlab;

namespace {

// Every reduced a/q in [0, 1] with q <= order, sorted.
std::vector<Rational> enumerate_sorted(std::int64_t order) {
  std::set<Rational> set;
  for (std::int64_t q = 1; q <= order; ++q) {
    for (std::int64_t a = 0; a <= q; ++a) set.insert(Rational(a, q));
  }
  return {set.begin(), set.end()};
}

const MajorArc& arc_of(const std::vector<MajorArc>& arcs, std::int64_t a, std::int64_t q) {
  for (const auto& arc : arcs) {
    if (arc.center.a == a && arc.center.q == q) return arc;
  }
  throw std::logic_error("no arc");
}

}  // namespace

TEST(FareySequence, OrderOne) {
  const auto f = farey_sequence(1);
  ASSERT_EQ(f.fractions.size(), 2u);
  EXPECT_EQ(f.fractions[0], (FareyFraction{0, 1}));
  EXPECT_EQ(f.fractions[1], (FareyFraction{1, 1}));
}

TEST(FareySequence, OrderThree) {
  const auto f = farey_sequence(3);
  const std::vector<FareyFraction> want{{0, 1}, {1, 3}, {1, 2}, {2, 3}, {1, 1}};
  EXPECT_EQ(f.fractions, want);
}

TEST(FareySequence, OrderFiveNeighbours) {
  const auto f = farey_sequence(5);
  ASSERT_EQ(f.fractions.size(), 11u);
  for (std::size_t i = 0; i + 1 < f.fractions.size(); ++i) {
    if (f.fractions[i] == FareyFraction{2, 5}) {
      EXPECT_EQ(f.fractions[i + 1], (FareyFraction{1, 2}));
      EXPECT_EQ(f.fractions[i + 1].value() - f.fractions[i].value(), Rational(1, 10));
    }
  }
}

TEST(FareySequence, MatchesSortedEnumeration) {
  for (std::int64_t order = 1; order <= 40; ++order) {
    const auto f = farey_sequence(order);
    const auto want = enumerate_sorted(order);
    ASSERT_EQ(f.fractions.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(f.fractions[i].value(), want[i]);
  }
}

TEST(FareySequence, NeighbourIdentities) {
  for (std::int64_t order = 1; order <= 200; ++order) {
    const auto f = farey_sequence(order).fractions;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
      ASSERT_EQ(f[i + 1].a * f[i].q - f[i].a * f[i + 1].q, 1);
      ASSERT_GT(f[i].q + f[i + 1].q, order);
      ASSERT_EQ(std::gcd(f[i].a, f[i].q), 1);
    }
  }
}

TEST(MajorArcs, OrderThreeTable) {
  const auto arcs = major_arcs(farey_sequence(3));
  const auto& half = arc_of(arcs, 1, 2);
  EXPECT_EQ(half.left, Rational(2, 5));
  EXPECT_EQ(half.right, Rational(3, 5));
  EXPECT_EQ(half.alpha, Rational(3, 5));
  EXPECT_EQ(half.beta, Rational(3, 5));
  const auto& zero = arc_of(arcs, 0, 1);
  EXPECT_EQ(zero.left, Rational(0));
  EXPECT_EQ(zero.right, Rational(1, 4));
  EXPECT_EQ(arc_of(arcs, 1, 3).left, Rational(1, 4));
  EXPECT_EQ(arc_of(arcs, 1, 3).right, Rational(2, 5));
  EXPECT_TRUE(arc_of(arcs, 1, 1).closed_right);
}

TEST(MajorArcs, PartitionUnitInterval) {
  for (std::int64_t order = 1; order <= 50; ++order) {
    const auto arcs = major_arcs(farey_sequence(order));
    ASSERT_EQ(arcs.front().left, Rational(0));
    ASSERT_EQ(arcs.back().right, Rational(1));
    for (std::size_t i = 0; i + 1 < arcs.size(); ++i) {
      ASSERT_EQ(arcs[i].right, arcs[i + 1].left);
      ASSERT_LT(arcs[i].left, arcs[i].right);
      ASSERT_FALSE(arcs[i].closed_right);
    }
  }
}

TEST(LocateArc, Examples) {
  const auto arcs = major_arcs(farey_sequence(3));
  auto at_half = locate_arc(Rational(1, 2), arcs);
  EXPECT_EQ(at_half.center, (FareyFraction{1, 2}));
  EXPECT_EQ(at_half.offset, Rational(0));
  auto near_third = locate_arc(Rational(39, 100), arcs);
  EXPECT_EQ(near_third.center, (FareyFraction{1, 3}));
  EXPECT_EQ(near_third.offset, Rational(39, 100) - Rational(1, 3));
  auto at_one = locate_arc(Rational(1), arcs);
  EXPECT_EQ(at_one.center, (FareyFraction{1, 1}));
  EXPECT_EQ(at_one.offset, Rational(0));
  EXPECT_THROW(locate_arc(Rational(-1, 7), arcs), std::out_of_range);
  EXPECT_THROW(locate_arc(Rational(8, 7), arcs), std::out_of_range);
}

TEST(LocateArc, LeftEndpointsBelongToTheirArc) {
  const auto arcs = major_arcs(farey_sequence(12));
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    EXPECT_EQ(locate_arc(arcs[i].left, arcs).index, i);
  }
}

TEST(FareySequence, RejectsNonPositiveOrder) { EXPECT_THROW(farey_sequence(0), std::invalid_argument); }
