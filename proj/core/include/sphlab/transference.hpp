#pragma once

// Commuting inner automorphisms gamma_i(x) = U_i x U_i^* of M_n, their
// spherical averages, lattice orbit functions g(n) = gamma^n x, and the
// truncation identity linking the two.

#include <cstdint>
#include <span>
#include <vector>

#include "sphlab/ncmax.hpp"
#include "sphlab/torus.hpp"

namespace sphlab {

class AutomorphismFamily {
 public:
  /// Throws std::invalid_argument unless the U_i are unitary and pairwise commute to 1e-12.
  explicit AutomorphismFamily(std::vector<Matrix> unitaries);

  /// U_i = diag(1, e^{2 pi i theta_i}) on M_2.
  static AutomorphismFamily diagonal_phases(std::span<const double> theta);
  /// U_i = W^{shift_i} with W = P diag(e^{2 pi i phase_r}), P the cyclic shift
  /// e_r -> e_{r+1}. Powers of one unitary commute.
  static AutomorphismFamily permutation_phases(std::span<const double> phases,
                                               std::span<const int> shifts);
  /// All U_i = I.
  static AutomorphismFamily trivial(int n, int d);

  int dimension() const noexcept { return static_cast<int>(unitaries_.size()); }
  int matrix_dim() const noexcept { return static_cast<int>(unitaries_.front().rows()); }
  const Matrix& unitary(int i) const { return unitaries_.at(static_cast<std::size_t>(i)); }

  /// U^n = prod_i U_i^{n_i}.
  Matrix power(std::span<const std::int64_t> n) const;

 private:
  std::vector<Matrix> unitaries_;
};

/// gamma^n x = U^n x U^{-n}.
Matrix gamma_apply(const AutomorphismFamily& family, std::span<const std::int64_t> n, const Matrix& x);

/// r_d(k)^{-1} sum_{|n|^2 = k} gamma^n x.
Matrix auto_spherical_average(const AutomorphismFamily& family, const Matrix& x, std::int64_t k);

inline constexpr std::size_t kDefaultSiteBudget = std::size_t{1} << 22;

/// g(n) = gamma^n x for |n|_inf <= J, 0 elsewhere, on the torus of the given
/// side. Throws ResourceError when side^d exceeds site_budget and
/// std::invalid_argument when the window does not fit (side < 2J + 1).
LatticeFunction orbit_truncation(const AutomorphismFamily& family, const Matrix& x, int window,
                                 int side, std::size_t site_budget = kDefaultSiteBudget);

struct TruncationCheck {
  double max_deviation = 0.0;
  std::int64_t comparisons = 0;  // (site, k) pairs compared
  int side = 0;
};

/// max over k <= cap^2 with r_d(k) > 0 and |n|_inf <= J - cap of
/// |spherical_convolve(shell_k, g)(n) - gamma^n M_k x| entrywise.
TruncationCheck truncation_identity_check(const AutomorphismFamily& family, const Matrix& x, int window,
                                          int cap, std::size_t site_budget = kDefaultSiteBudget);

/// ((2(J - N) + 1) / (2J + 1))^d: share of the window on which the identity holds.
double window_ratio(int window, int cap, int d);

struct RatioRow {
  std::int64_t k_max = 0;
  double ratio = 0.0;        // ||sup+_{k <= K} M_k x||_p / ||x||_p
  double lower_bound = 0.0;  // max_k ||M_k x||_p / ||x||_p
  double upper_bound = 0.0;  // || sum_k |M_k x| ||_p / ||x||_p
  double solver_gap = 0.0;   // certificate gap / ||x||_p
  SolverStatus status = SolverStatus::kConverged;
};

/// One row per K in k_list (ascending); the family for K is {M_k x : 1 <= k <= K, r_d(k) > 0}.
std::vector<RatioRow> maximal_ratio_experiment(const AutomorphismFamily& family, const Matrix& x,
                                               std::span<const std::int64_t> k_list, double p,
                                               const SolverOptions& options = {});

/// R(K_{i+1}) >= R(K_i) - (gap_i + gap_{i+1}) for every consecutive pair.
bool ratios_monotone(std::span<const RatioRow> rows);

}  // namespace sphlab
