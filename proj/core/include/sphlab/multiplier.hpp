#pragma once

// Spherical multipliers and their circle-method decomposition:
//   m_lambda(xi)        exact multiplier of the discrete spherical average,
//   m_lambda^{a/q}(xi)  the piece carried by the major arc I(a/q),
//   n_lambda^{a/q}(xi)  its smooth approximant built from G(a/q, l), phi_q and
//                       sigma^_lambda, and N_lambda = sum over all a/q.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "sphlab/farey.hpp"
#include "sphlab/gauss.hpp"
#include "sphlab/lattice.hpp"

namespace sphlab {

/// Radius data shared by the multipliers at lambda = sqrt(k).
struct SphereScale {
  int dimension = 0;
  std::int64_t radius_sq = 0;
  double lambda = 0.0;
  std::uint64_t rep_count = 0;     // r_d(k)
  double main_term_factor = 0.0;   // c_d lambda^{d-2} / r_d(k)

  /// Throws std::domain_error when r_d(k) = 0.
  static SphereScale make(int d, std::int64_t k);
};

/// r_d(k)^{-1} sum_{|n|^2 = k} e^{2 pi i n.xi}.
Complex exact_multiplier(const SphereShell& shell, std::span<const double> xi);

/// Same multiplier at the torus frequency j / side, with exact integer phases.
Complex exact_multiplier_at(const SphereShell& shell, std::span<const int> j, int side);

struct QuadratureSpec {
  int order = 20;                      // Gauss-Legendre nodes per panel
  double oscillation_fraction = 0.25;  // panel width <= fraction of the period 1/k
  double heat_fraction = 0.5;          // panel width <= fraction of epsilon
  std::int64_t panel_budget = std::int64_t{1} << 22;
};

/// e^{2 pi eps k} / r_d(k) * integral over s in I(a/q) of e^{-2 pi i k s} K^_s^eps(xi) ds,
/// with the heat multiplier in Poisson form. epsilon must equal order^{-2}.
Complex arc_multiplier(const SphereScale& scale, const MajorArc& arc, std::span<const double> xi,
                       double epsilon, const QuadratureSpec& quad = {});

/// n_lambda^{a/q}(xi). Only the l nearest to q xi can contribute because the
/// translates phi_q(. - l/q) have disjoint supports.
Complex approx_arc_multiplier(const SphereScale& scale, const GaussTable& gauss,
                              std::span<const double> xi);
Complex approx_arc_multiplier(const SphereScale& scale, std::int64_t a, std::int64_t q,
                              std::span<const double> xi);

/// Envelope 2^{d/2} q^{-d/2} sup|sigma^| c_d lambda^{d-2} / r_d(k) for |n_lambda^{a/q}|.
double approx_arc_envelope(const SphereScale& scale, std::int64_t q);

/// How the q = 1 class is counted. kCircle treats 0/1 and 1/1 as the same
/// point of R/Z and counts it once; kLiteral sums both (a, q) = (0, 1) and (1, 1).
enum class EndpointCounting { kCircle, kLiteral };

struct ApproxOptions {
  std::int64_t q_max = 0;  // 0 selects the smallest q_max whose tail bound is below tail_tol
  double tail_tol = 0.1;
  std::int64_t q_budget = 4096;
  EndpointCounting counting = EndpointCounting::kCircle;
};

struct ApproxTotal {
  Complex value;
  std::int64_t q_max = 0;
  double tail_bound = 0.0;  // bound on the omitted q > q_max terms
};

/// Bound on sum over q > q_max of the approximant envelopes; +inf for d <= 4.
double approx_tail_bound(const SphereScale& scale, std::int64_t q_max);

/// N_lambda truncated at q <= q_max, with Gauss tables built once.
class Approximant {
 public:
  Approximant(const SphereScale& scale, const ApproxOptions& options);

  ApproxTotal operator()(std::span<const double> xi) const;

  std::int64_t q_max() const noexcept { return q_max_; }
  double tail_bound() const noexcept { return tail_bound_; }

 private:
  struct Term {
    Complex phase;  // e^{-2 pi i k a / q}
    GaussTable gauss;
  };
  SphereScale scale_;
  std::int64_t q_max_ = 0;
  double tail_bound_ = 0.0;
  std::vector<std::vector<Term>> terms_by_q_;  // index q - 1
};

ApproxTotal approx_total(const SphereScale& scale, std::span<const double> xi,
                         const ApproxOptions& options = {});

}  // namespace sphlab
