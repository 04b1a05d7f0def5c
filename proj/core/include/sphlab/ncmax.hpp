#pragma once

// Schatten norms and the maximal norm ||sup+ x_j||_p of a finite family of
// hermitian matrices: inf { ||a||_p : -a <= x_j <= a for all j }, trace = the
// standard unnormalized matrix trace.

#include <complex>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sphlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// ||x - x*||_max <= tol (1 + ||x||_max).
bool is_hermitian(const Matrix& x, double tol = 1e-12);

/// (sum sigma_i^p)^{1/p}, or the largest singular value for p = inf.
double schatten_norm(const Matrix& x, double p);

/// |x| = (x* x)^{1/2}.
Matrix abs_matrix(const Matrix& x);

struct MaxNormProblem {
  double p = 2.0;
  std::vector<Matrix> family;
};

enum class SolverStatus { kConverged, kBudgetExceeded };

std::string to_string(SolverStatus status);

struct MaxNormCertificate {
  Matrix envelope;           // a, positive definite
  double objective = 0.0;    // ||a||_p
  double residual = 0.0;     // min_j lambda_min(a +- x_j)
  double gap = 0.0;          // bound on objective - optimum
  double lower_bound = 0.0;  // max_j ||x_j||_p
  double upper_bound = 0.0;  // || sum_j |x_j| ||_p
  int iterations = 0;
  SolverStatus status = SolverStatus::kConverged;
};

struct SolverOptions {
  double tol = 1e-7;          // target gap relative to the objective
  int max_iterations = 2000;  // Newton steps (bisection steps for p = inf)
};

/// Barrier method on tr(a^p) - mu sum_j logdet(a - x_j) + logdet(a + x_j) for
/// p < inf; bisection on t I for p = inf. Throws std::invalid_argument for an
/// empty or non-hermitian family or p < 1, DimensionMismatch for mixed sizes.
MaxNormCertificate ncmax_norm(const MaxNormProblem& problem, const SolverOptions& options = {});

/// Exact value for a diagonal family: || diag_i max_j |x_j(i,i)| ||_p.
/// Throws std::invalid_argument if some member is not diagonal.
double ncmax_diag_oracle(const MaxNormProblem& problem);

}  // namespace sphlab
