#include "sphlab/farey.hpp"

#include <algorithm>
#include <stdexcept>

namespace sphlab {

FareySequence farey_sequence(std::int64_t order) {
  if (order < 1) throw std::invalid_argument("farey_sequence: order must be >= 1");

  FareySequence seq{order, {}};
  // Consecutive terms a/b < c/d determine the next one as (k c - a)/(k d - b)
  // with k = floor((order + b) / d).
  std::int64_t a = 0, b = 1, c = 1, d = order;
  seq.fractions.push_back({a, b});
  while (c <= order) {
    const std::int64_t k = (order + b) / d;
    const std::int64_t next_c = k * c - a;
    const std::int64_t next_d = k * d - b;
    a = c;
    b = d;
    c = next_c;
    d = next_d;
    seq.fractions.push_back({a, b});
  }
  return seq;
}

std::vector<MajorArc> major_arcs(const FareySequence& sequence) {
  const auto& f = sequence.fractions;
  const std::int64_t order = sequence.order;
  if (f.size() < 2) throw std::invalid_argument("major_arcs: sequence must contain 0/1 and 1/1");

  std::vector<MajorArc> arcs;
  arcs.reserve(f.size());
  const Rational endpoint_ratio(order, 1 + order);
  for (std::size_t i = 0; i < f.size(); ++i) {
    MajorArc arc;
    arc.center = f[i];
    arc.order = order;
    const Rational center = f[i].value();
    const std::int64_t q = f[i].q;
    if (i == 0) {
      arc.alpha = arc.beta = endpoint_ratio;
      arc.left = Rational(0);
      arc.right = arc.alpha / order;
    } else if (i + 1 == f.size()) {
      arc.alpha = arc.beta = endpoint_ratio;
      arc.left = Rational(1) - arc.beta / order;
      arc.right = Rational(1);
      arc.closed_right = true;
    } else {
      arc.beta = Rational(order, q + f[i - 1].q);
      arc.alpha = Rational(order, q + f[i + 1].q);
      arc.left = center - arc.beta / (q * order);
      arc.right = center + arc.alpha / (q * order);
    }
    arcs.push_back(arc);
  }
  return arcs;
}

ArcLocation locate_arc(const Rational& s, std::span<const MajorArc> arcs) {
  if (arcs.empty()) throw std::invalid_argument("locate_arc: empty arc list");
  if (s < Rational(0) || s > Rational(1)) throw std::out_of_range("locate_arc: s outside [0, 1]");

  // First arc whose left endpoint exceeds s; the arc before it contains s.
  const auto it = std::upper_bound(arcs.begin(), arcs.end(), s,
                                   [](const Rational& v, const MajorArc& arc) { return v < arc.left; });
  const auto index = static_cast<std::size_t>(std::distance(arcs.begin(), it)) - 1;
  const MajorArc& arc = arcs[index];
  if (!arc.contains(s)) throw std::logic_error("locate_arc: arcs do not partition [0, 1]");
  return ArcLocation{index, arc.center, s - arc.center.value()};
}

}  // namespace sphlab
