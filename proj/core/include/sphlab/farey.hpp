#pragma once

// Farey sequences and the major-arc partition of [0, 1], in exact rational arithmetic.

#include <cstdint>
#include <span>
#include <vector>

#include <boost/rational.hpp>

namespace sphlab {

using Rational = boost::rational<std::int64_t>;

struct FareyFraction {
  std::int64_t a = 0;
  std::int64_t q = 1;

  Rational value() const { return Rational(a, q); }
  friend bool operator==(const FareyFraction&, const FareyFraction&) = default;
};

struct FareySequence {
  std::int64_t order = 0;
  std::vector<FareyFraction> fractions;  // ascending, 0/1 .. 1/1
};

/// The arc I(a/q). Every arc is [left, right) except the last, which is [left, 1].
struct MajorArc {
  FareyFraction center;
  std::int64_t order = 0;
  Rational left;
  Rational right;
  Rational alpha;
  Rational beta;
  bool closed_right = false;

  bool contains(const Rational& s) const {
    return left <= s && (closed_right ? s <= right : s < right);
  }
};

struct ArcLocation {
  std::size_t index = 0;  // position in the arc list
  FareyFraction center;
  Rational offset;  // t = s - a/q
};

/// F_order via the next-term recurrence; order must be >= 1.
FareySequence farey_sequence(std::int64_t order);

std::vector<MajorArc> major_arcs(const FareySequence& sequence);

/// Locates the unique arc containing s in [0, 1]. Throws std::out_of_range
/// when s lies outside [0, 1].
ArcLocation locate_arc(const Rational& s, std::span<const MajorArc> arcs);

}  // namespace sphlab
