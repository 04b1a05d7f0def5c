#include "sphlab/transference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sphlab/error.hpp"
#include "sphlab/lattice.hpp"

namespace sphlab {
namespace {

double max_abs(const Matrix& x) { return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff(); }

Complex turn(double theta) {
  return std::polar(1.0, 2.0 * std::numbers::pi * theta);
}

// U^m for any integer m, with U^{-1} = U^*.
Matrix signed_power(const Matrix& u, std::int64_t m) {
  Matrix base = m < 0 ? Matrix(u.adjoint()) : u;
  std::int64_t e = m < 0 ? -m : m;
  Matrix result = Matrix::Identity(u.rows(), u.cols());
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

// Odometer over the box [-r, r]^d.
bool next_in_box(std::vector<std::int64_t>& n, std::int64_t r) {
  for (std::size_t c = n.size(); c-- > 0;) {
    if (n[c] < r) {
      ++n[c];
      return true;
    }
    n[c] = -r;
  }
  return false;
}

}  // namespace

AutomorphismFamily::AutomorphismFamily(std::vector<Matrix> unitaries) : unitaries_(std::move(unitaries)) {
  if (unitaries_.empty()) throw std::invalid_argument("AutomorphismFamily: no unitaries");
  const auto n = unitaries_.front().rows();
  for (const Matrix& u : unitaries_) {
    if (u.rows() != n || u.cols() != n) throw DimensionMismatch("AutomorphismFamily: sizes differ");
    if (max_abs(u * u.adjoint() - Matrix::Identity(n, n)) > 1e-12) {
      throw std::invalid_argument("AutomorphismFamily: U_i is not unitary");
    }
  }
  for (std::size_t i = 0; i < unitaries_.size(); ++i) {
    for (std::size_t j = i + 1; j < unitaries_.size(); ++j) {
      const Matrix& a = unitaries_[i];
      const Matrix& b = unitaries_[j];
      if (max_abs(a * b - b * a) > 1e-12) {
        throw std::invalid_argument("AutomorphismFamily: U_i and U_j do not commute");
      }
    }
  }
}

AutomorphismFamily AutomorphismFamily::diagonal_phases(std::span<const double> theta) {
  std::vector<Matrix> us;
  for (const double t : theta) {
    Matrix u = Matrix::Identity(2, 2);
    u(1, 1) = turn(t);
    us.push_back(u);
  }
  return AutomorphismFamily(std::move(us));
}

AutomorphismFamily AutomorphismFamily::permutation_phases(std::span<const double> phases,
                                                          std::span<const int> shifts) {
  const auto n = static_cast<Eigen::Index>(phases.size());
  if (n < 1) throw std::invalid_argument("permutation_phases: no phases");
  Matrix w = Matrix::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) w((r + 1) % n, r) = turn(phases[static_cast<std::size_t>(r)]);
  std::vector<Matrix> us;
  for (const int s : shifts) us.push_back(signed_power(w, s));
  return AutomorphismFamily(std::move(us));
}

AutomorphismFamily AutomorphismFamily::trivial(int n, int d) {
  return AutomorphismFamily(std::vector<Matrix>(static_cast<std::size_t>(d), Matrix::Identity(n, n)));
}

Matrix AutomorphismFamily::power(std::span<const std::int64_t> n) const {
  if (n.size() != unitaries_.size()) throw DimensionMismatch("AutomorphismFamily::power: wrong dimension");
  const auto dim = unitaries_.front().rows();
  Matrix result = Matrix::Identity(dim, dim);
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] != 0) result = result * signed_power(unitaries_[i], n[i]);
  }
  return result;
}

Matrix gamma_apply(const AutomorphismFamily& family, std::span<const std::int64_t> n, const Matrix& x) {
  if (x.rows() != family.matrix_dim() || x.cols() != family.matrix_dim()) {
    throw DimensionMismatch("gamma_apply: matrix size differs from the family");
  }
  const Matrix u = family.power(n);
  return u * x * u.adjoint();
}

Matrix auto_spherical_average(const AutomorphismFamily& family, const Matrix& x, std::int64_t k) {
  const SphereShell shell = sphere_shell(family.dimension(), k);
  if (shell.empty()) throw std::domain_error("auto_spherical_average: r_d(k) = 0");
  Matrix acc = Matrix::Zero(x.rows(), x.cols());
  std::vector<std::int64_t> n(static_cast<std::size_t>(family.dimension()));
  for (std::size_t i = 0; i < shell.size(); ++i) {
    const auto m = shell.point(i);
    std::copy(m.begin(), m.end(), n.begin());
    acc += gamma_apply(family, n, x);
  }
  return acc / static_cast<double>(shell.size());
}

LatticeFunction orbit_truncation(const AutomorphismFamily& family, const Matrix& x, int window, int side,
                                 std::size_t site_budget) {
  if (window < 0) throw std::invalid_argument("orbit_truncation: window must be nonnegative");
  if (side < 2 * window + 1) throw std::invalid_argument("orbit_truncation: window does not fit the torus");
  const int d = family.dimension();
  if (std::pow(static_cast<double>(side), d) > static_cast<double>(site_budget)) {
    throw ResourceError("orbit_truncation: side^d exceeds the site budget");
  }
  LatticeFunction g(d, side, family.matrix_dim());
  std::vector<std::int64_t> n(static_cast<std::size_t>(d), -window);
  do {
    g.set_matrix(g.grid().wrap(n), gamma_apply(family, n, x));
  } while (next_in_box(n, window));
  return g;
}

TruncationCheck truncation_identity_check(const AutomorphismFamily& family, const Matrix& x, int window,
                                          int cap, std::size_t site_budget) {
  if (cap < 1 || cap > window) throw std::invalid_argument("truncation_identity_check: need 1 <= N <= J");
  const int d = family.dimension();
  const int side = 2 * (window + cap) + 1;
  const LatticeFunction g = orbit_truncation(family, x, window, side, site_budget);
  const int inner = window - cap;

  TruncationCheck check;
  check.side = side;
  for (std::int64_t k = 1; k <= static_cast<std::int64_t>(cap) * cap; ++k) {
    const SphereShell shell = sphere_shell(d, k);
    if (shell.empty()) continue;
    const LatticeFunction averaged = spherical_convolve(shell, g);
    const Matrix mx = auto_spherical_average(family, x, k);
    std::vector<std::int64_t> n(static_cast<std::size_t>(d), -inner);
    do {
      const Matrix expected = gamma_apply(family, n, mx);
      const Matrix actual = averaged.matrix_at(averaged.grid().wrap(n));
      check.max_deviation = std::max(check.max_deviation, max_abs(actual - expected));
      ++check.comparisons;
    } while (next_in_box(n, inner));
  }
  return check;
}

double window_ratio(int window, int cap, int d) {
  return std::pow(static_cast<double>(2 * (window - cap) + 1) / static_cast<double>(2 * window + 1), d);
}

std::vector<RatioRow> maximal_ratio_experiment(const AutomorphismFamily& family, const Matrix& x,
                                               std::span<const std::int64_t> k_list, double p,
                                               const SolverOptions& options) {
  if (!std::is_sorted(k_list.begin(), k_list.end())) {
    throw std::invalid_argument("maximal_ratio_experiment: K list must be ascending");
  }
  const double base = schatten_norm(x, p);
  if (base == 0.0) throw std::invalid_argument("maximal_ratio_experiment: x = 0");
  std::vector<Matrix> averages;
  std::int64_t next_k = 1;
  std::vector<RatioRow> rows;
  for (const std::int64_t big_k : k_list) {
    for (; next_k <= big_k; ++next_k) {
      if (rep_count(family.dimension(), next_k) == 0) continue;
      averages.push_back(auto_spherical_average(family, x, next_k));
    }
    if (averages.empty()) throw std::invalid_argument("maximal_ratio_experiment: no radii up to K");
    const MaxNormCertificate cert = ncmax_norm(MaxNormProblem{p, averages}, options);
    rows.push_back(RatioRow{big_k, cert.objective / base, cert.lower_bound / base,
                            cert.upper_bound / base, cert.gap / base, cert.status});
  }
  return rows;
}

bool ratios_monotone(std::span<const RatioRow> rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double slack = rows[i - 1].solver_gap + rows[i].solver_gap;
    if (rows[i].ratio < rows[i - 1].ratio - slack) return false;
  }
  return true;
}

}  // namespace sphlab
