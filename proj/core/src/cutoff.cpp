#include "sphlab/cutoff.hpp"

#include <cmath>

namespace sphlab {

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double h0 = std::exp(-1.0 / x);
  const double h1 = std::exp(-1.0 / (1.0 - x));
  return h0 / (h0 + h1);
}

double bump_1d(CutoffKind kind, double x) {
  const double inner = kind == CutoffKind::kPhi ? 0.125 : 0.25;
  const double r = std::abs(x);
  if (r <= inner) return 1.0;
  if (r >= 2.0 * inner) return 0.0;
  return 1.0 - smooth_step((r - inner) / inner);
}

double cutoff(const CutoffSpec& spec, std::span<const double> xi) {
  const auto q = static_cast<double>(spec.q);
  double value = 1.0;
  for (const double x : xi) {
    value *= bump_1d(spec.kind, q * x);
    if (value == 0.0) break;
  }
  return value;
}

}  // namespace sphlab
