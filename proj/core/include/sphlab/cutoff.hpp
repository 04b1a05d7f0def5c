#pragma once

#include <cstdint>
#include <span>

namespace sphlab {

/// phi: supported in the cube of half-width 1/4, equal to 1 on half-width 1/8.
/// psi: supported in half-width 1/2, equal to 1 on half-width 1/4.
enum class CutoffKind { kPhi, kPsi };

struct CutoffSpec {
  CutoffKind kind = CutoffKind::kPhi;
  std::int64_t q = 1;  // dilation: the cutoff is evaluated at q * xi
};

/// The C-infinity transition S(x) = h(x) / (h(x) + h(1 - x)), h(x) = exp(-1/x)
/// for x > 0 and 0 otherwise. S = 0 on x <= 0, S = 1 on x >= 1.
double smooth_step(double x);

/// One-dimensional bump: 1 for |x| <= inner, 1 - S((|x| - inner) / inner) on
/// the transition, 0 for |x| >= 2 inner; inner is 1/8 (phi) or 1/4 (psi).
double bump_1d(CutoffKind kind, double x);

/// Tensor product of bump_1d over coordinates of q * xi.
double cutoff(const CutoffSpec& spec, std::span<const double> xi);

}  // namespace sphlab
