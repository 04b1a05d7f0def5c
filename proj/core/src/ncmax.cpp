#include "sphlab/ncmax.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sphlab/error.hpp"

namespace sphlab {
namespace {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

double max_abs(const Matrix& x) { return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff(); }

double min_eigenvalue(const Matrix& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(x, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double norm_of_eigenvalues(const RealVector& values, double p) {
  if (std::isinf(p)) return values.cwiseAbs().maxCoeff();
  double acc = 0.0;
  for (const double v : values) acc += std::pow(std::abs(v), p);
  return std::pow(acc, 1.0 / p);
}

void validate(const MaxNormProblem& problem) {
  if (!(problem.p >= 1.0)) throw std::invalid_argument("ncmax: p must be in [1, inf]");
  if (problem.family.empty()) throw std::invalid_argument("ncmax: empty family");
  const auto n = problem.family.front().rows();
  for (const Matrix& x : problem.family) {
    if (x.rows() != n || x.cols() != n) throw DimensionMismatch("ncmax: family sizes differ");
    if (!is_hermitian(x)) throw std::invalid_argument("ncmax: family member is not hermitian");
  }
}

// Orthonormal real basis of the n x n hermitian matrices for <A, B> = Re tr(AB).
std::vector<Matrix> hermitian_basis(int n) {
  std::vector<Matrix> basis;
  const double r = std::sqrt(0.5);
  for (int i = 0; i < n; ++i) {
    Matrix b = Matrix::Zero(n, n);
    b(i, i) = 1.0;
    basis.push_back(b);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Matrix s = Matrix::Zero(n, n);
      s(i, j) = r;
      s(j, i) = r;
      basis.push_back(s);
      Matrix a = Matrix::Zero(n, n);
      a(i, j) = {0.0, -r};
      a(j, i) = {0.0, r};
      basis.push_back(a);
    }
  }
  return basis;
}

// Re tr(A B).
double trace_product(const Matrix& a, const Matrix& b) {
  return (a.cwiseProduct(b.transpose())).sum().real();
}

class BarrierSolver {
 public:
  BarrierSolver(const std::vector<Matrix>& family, double p)
      : family_(family), p_(p), n_(static_cast<int>(family.front().rows())),
        basis_(hermitian_basis(n_)) {}

  // tr(a^p) - mu sum logdet(a -+ x_j), or +inf outside the open feasible region.
  double value(const Matrix& a, double mu) const {
    double barrier = 0.0;
    for (const Matrix& x : family_) {
      for (const double sign : {-1.0, 1.0}) {
        Eigen::LLT<Matrix> llt(a + sign * x);
        if (llt.info() != Eigen::Success) return kInfinity;
        const auto diag = llt.matrixLLT().diagonal().real();
        if ((diag.array() <= 0.0).any()) return kInfinity;
        barrier -= 2.0 * diag.array().log().sum();
      }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
    double power = 0.0;
    for (const double v : es.eigenvalues()) power += std::pow(std::max(v, 0.0), p_);
    return power + mu * barrier;
  }

  // Gradient and Hessian in the hermitian basis.
  void derivatives(const Matrix& a, double mu, RealVector& grad, RealMatrix& hess) const {
    const auto m = static_cast<Eigen::Index>(basis_.size());
    grad = RealVector::Zero(m);
    hess = RealMatrix::Zero(m, m);

    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    const RealVector lam = es.eigenvalues();
    const Matrix& v = es.eigenvectors();
    // Divided differences of t -> p t^{p-1}.
    RealMatrix gamma(n_, n_);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        const double li = lam(i);
        const double lj = lam(j);
        if (std::abs(li - lj) <= 1e-10 * std::max(std::abs(li), std::abs(lj))) {
          const double mid = 0.5 * (li + lj);
          gamma(i, j) = p_ * (p_ - 1.0) * std::pow(mid, p_ - 2.0);
        } else {
          gamma(i, j) = p_ * (std::pow(li, p_ - 1.0) - std::pow(lj, p_ - 1.0)) / (li - lj);
        }
      }
    }
    RealVector lam_pow(n_);
    for (int i = 0; i < n_; ++i) lam_pow(i) = p_ * std::pow(lam(i), p_ - 1.0);
    const Matrix power_grad = v * lam_pow.cast<Complex>().asDiagonal() * v.adjoint();

    std::vector<Matrix> rotated;
    rotated.reserve(basis_.size());
    for (const Matrix& b : basis_) rotated.push_back(v.adjoint() * b * v);
    for (Eigen::Index r = 0; r < m; ++r) {
      grad(r) = trace_product(power_grad, basis_[static_cast<std::size_t>(r)]);
      const Matrix weighted = gamma.cast<Complex>().cwiseProduct(rotated[static_cast<std::size_t>(r)]);
      for (Eigen::Index s = r; s < m; ++s) {
        const double h = trace_product(weighted, rotated[static_cast<std::size_t>(s)]);
        hess(r, s) += h;
        if (s != r) hess(s, r) += h;
      }
    }

    std::vector<Matrix> products(basis_.size());
    for (const Matrix& x : family_) {
      for (const double sign : {-1.0, 1.0}) {
        const Matrix inv = (a + sign * x).inverse();
        for (Eigen::Index r = 0; r < m; ++r) {
          grad(r) -= mu * trace_product(inv, basis_[static_cast<std::size_t>(r)]);
          products[static_cast<std::size_t>(r)] = inv * basis_[static_cast<std::size_t>(r)];
        }
        for (Eigen::Index r = 0; r < m; ++r) {
          for (Eigen::Index s = r; s < m; ++s) {
            const double h = mu * trace_product(products[static_cast<std::size_t>(r)],
                                                products[static_cast<std::size_t>(s)]);
            hess(r, s) += h;
            if (s != r) hess(s, r) += h;
          }
        }
      }
    }
  }

  Matrix to_matrix(const RealVector& coeffs) const {
    Matrix out = Matrix::Zero(n_, n_);
    for (Eigen::Index r = 0; r < coeffs.size(); ++r) out += coeffs(r) * basis_[static_cast<std::size_t>(r)];
    return out;
  }

  int barrier_parameter() const { return 2 * static_cast<int>(family_.size()) * n_; }

 private:
  const std::vector<Matrix>& family_;
  double p_;
  int n_;
  std::vector<Matrix> basis_;
};

double feasibility_residual(const Matrix& a, const std::vector<Matrix>& family) {
  double worst = kInfinity;
  for (const Matrix& x : family) {
    worst = std::min(worst, min_eigenvalue(a - x));
    worst = std::min(worst, min_eigenvalue(a + x));
  }
  return worst;
}

MaxNormCertificate solve_infinity(const std::vector<Matrix>& family, double lower, double upper,
                                  const SolverOptions& options) {
  // t I is feasible iff t >= max_j ||x_j||_inf; bisect on that test.
  const auto n = family.front().rows();
  auto feasible = [&](double t) {
    return feasibility_residual(t * Matrix::Identity(n, n), family) >= 0.0;
  };
  double lo = 0.0;
  double hi = upper;
  int steps = 0;
  while (hi - lo > options.tol * hi && steps < options.max_iterations) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
    ++steps;
  }
  MaxNormCertificate cert;
  cert.envelope = hi * Matrix::Identity(n, n);
  cert.objective = hi;
  cert.residual = feasibility_residual(cert.envelope, family);
  cert.gap = hi - lo;
  cert.lower_bound = lower;
  cert.upper_bound = upper;
  cert.iterations = steps;
  cert.status = hi - lo <= options.tol * hi ? SolverStatus::kConverged : SolverStatus::kBudgetExceeded;
  return cert;
}

}  // namespace

bool is_hermitian(const Matrix& x, double tol) {
  if (x.rows() != x.cols()) return false;
  return max_abs(x - x.adjoint()) <= tol * (1.0 + max_abs(x));
}

double schatten_norm(const Matrix& x, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("schatten_norm: p must be in [1, inf]");
  if (x.size() == 0) return 0.0;
  if (is_hermitian(x)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(x, Eigen::EigenvaluesOnly);
    return norm_of_eigenvalues(es.eigenvalues(), p);
  }
  Eigen::JacobiSVD<Matrix> svd(x);
  return norm_of_eigenvalues(svd.singularValues(), p);
}

Matrix abs_matrix(const Matrix& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(x.adjoint() * x);
  RealVector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

std::string to_string(SolverStatus status) {
  return status == SolverStatus::kConverged ? "converged" : "budget_exceeded";
}

MaxNormCertificate ncmax_norm(const MaxNormProblem& problem, const SolverOptions& options) {
  validate(problem);
  const double p = problem.p;
  const auto n = problem.family.front().rows();

  double lower = 0.0;
  Matrix sum_abs = Matrix::Zero(n, n);
  double scale = 0.0;
  for (const Matrix& x : problem.family) {
    lower = std::max(lower, schatten_norm(x, p));
    sum_abs += abs_matrix(x);
    scale = std::max(scale, schatten_norm(x, kInfinity));
  }
  const double upper = schatten_norm(sum_abs, p);

  if (scale == 0.0) {
    MaxNormCertificate zero;
    zero.envelope = Matrix::Zero(n, n);
    return zero;
  }
  if (std::isinf(p)) return solve_infinity(problem.family, lower, upper, options);

  // Work with the family scaled to unit operator norm.
  std::vector<Matrix> family;
  family.reserve(problem.family.size());
  for (const Matrix& x : problem.family) family.push_back(x / scale);
  const double lower_scaled = lower / scale;
  const BarrierSolver solver(family, p);
  const double nu = solver.barrier_parameter();

  Matrix a = sum_abs / scale + options.tol * Matrix::Identity(n, n);
  // Gap in tr(a^p) is at most nu mu at the centre; in ||a||_p it shrinks by
  // d/dy y^{1/p} evaluated at the lower bound.
  auto gap_bound = [&](double mu) {
    return std::pow(lower_scaled, 1.0 - p) * nu * mu / p;
  };

  double mu = std::max(1.0, std::pow(schatten_norm(a, p), p)) / nu;
  int iterations = 0;
  bool converged = false;
  RealVector grad;
  RealMatrix hess;
  while (iterations < options.max_iterations) {
    // Centre for the current mu with damped Newton steps.
    for (int inner = 0; inner < 100 && iterations < options.max_iterations; ++inner) {
      solver.derivatives(a, mu, grad, hess);
      const RealVector step = hess.ldlt().solve(-grad);
      const double decrement_sq = -grad.dot(step);
      ++iterations;
      if (!(decrement_sq > 1e-20)) break;
      const Matrix direction = solver.to_matrix(step);
      const double f0 = solver.value(a, mu);
      double t = 1.0;
      while (t > 1e-12) {
        const double f1 = solver.value(a + t * direction, mu);
        if (f1 <= f0 - 0.25 * t * decrement_sq) break;
        t *= 0.5;
      }
      if (t <= 1e-12) break;
      a += t * direction;
      a = 0.5 * (a + a.adjoint()).eval();
      if (decrement_sq < 1e-14) break;
    }
    const double objective = schatten_norm(a, p);
    if (gap_bound(mu) <= options.tol * objective) {
      converged = true;
      break;
    }
    mu *= 0.2;
  }

  MaxNormCertificate cert;
  cert.envelope = a * scale;
  cert.objective = schatten_norm(cert.envelope, p);
  cert.residual = feasibility_residual(cert.envelope, problem.family);
  cert.gap = gap_bound(mu) * scale;
  cert.lower_bound = lower;
  cert.upper_bound = upper;
  cert.iterations = iterations;
  cert.status = converged ? SolverStatus::kConverged : SolverStatus::kBudgetExceeded;
  return cert;
}

double ncmax_diag_oracle(const MaxNormProblem& problem) {
  validate(problem);
  const auto n = problem.family.front().rows();
  RealVector envelope = RealVector::Zero(n);
  for (const Matrix& x : problem.family) {
    const Matrix off = x - Matrix(x.diagonal().asDiagonal());
    if (max_abs(off) > 1e-12 * (1.0 + max_abs(x))) {
      throw std::invalid_argument("ncmax_diag_oracle: family is not diagonal");
    }
    for (Eigen::Index i = 0; i < n; ++i) envelope(i) = std::max(envelope(i), std::abs(x(i, i).real()));
  }
  return norm_of_eigenvalues(envelope, problem.p);
}

}  // namespace sphlab
