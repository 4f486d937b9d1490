#include "plank/symmetrize.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

#include "plank/kernel.hpp"

namespace plank {

namespace {

void validate_config(const ScalingConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw Error(ErrorCode::InvalidDimension, "symmetrize: tol must be positive");
  if (cfg.max_iter < 1) throw Error(ErrorCode::InvalidDimension, "symmetrize: max_iter must be >= 1");
  if (!(cfg.damping > 0.0 && cfg.damping <= 1.0))
    throw Error(ErrorCode::InvalidDimension, "symmetrize: damping must lie in (0, 1]");
}

void check_rows_non_null(const Eigen::Ref<const Matrix>& A) {
  for (Index i = 0; i < A.rows(); ++i)
    if (A.row(i).norm() < 1e-12)
      throw Error(ErrorCode::NullRow, "symmetrize: row " + std::to_string(i) + " is null");
}

SymmetrizationResult finish(const Eigen::Ref<const Matrix>& A, Vector theta, int iterations,
                            double nuclear_trace, std::vector<double> history) {
  // Rescale by the common diagonal value so diag(H) = 1, then recompute the
  // polar factors at the rescaled theta.
  const double scale = nuclear_trace / static_cast<double>(A.rows());
  theta /= scale;
  PolarFactors pf = polar_decompose(theta.asDiagonal() * A);

  SymmetrizationResult res;
  res.theta = std::move(theta);
  res.H = pf.psd_part;
  res.U = pf.orthogonal_part.transpose();
  res.iterations = iterations;
  res.residual = (res.H.diagonal().array() - 1.0).abs().maxCoeff();
  res.nuclear_trace = nuclear_trace;
  res.nuclear_history = std::move(history);
  return res;
}

}  // namespace

SymmetrizationResult symmetrize(const Eigen::Ref<const Matrix>& A, const ScalingConfig& config) {
  if (A.rows() != A.cols() || A.rows() == 0)
    throw Error(ErrorCode::InvalidMatrix, "symmetrize: matrix must be square and non-empty");
  if (!A.allFinite()) throw Error(ErrorCode::InvalidMatrix, "symmetrize: non-finite entries");
  validate_config(config);
  check_rows_non_null(A);

  const Index n = A.rows();
  Vector theta = Vector::Ones(n);
  std::vector<double> history;

  double best_spread = std::numeric_limits<double>::infinity();
  Vector best_theta = theta;
  int best_iter = 0;
  double best_trace = 0.0;

  for (int it = 0;; ++it) {
    PolarFactors pf = polar_decompose(theta.asDiagonal() * A);
    const Vector d = pf.psd_part.diagonal();
    const double trace = d.sum();
    history.push_back(trace);

    if (d.minCoeff() < 1e-12)
      throw Error(ErrorCode::DegenerateDiagonal,
                  "symmetrize: diagonal entry collapsed below 1e-12 during iteration");

    const double mean = trace / static_cast<double>(n);
    const double spread = (d.array() - mean).abs().maxCoeff();
    if (spread / mean < best_spread) {
      best_spread = spread / mean;
      best_theta = theta;
      best_iter = it;
      best_trace = trace;
    }

    if (spread <= config.tol * mean)
      return finish(A, theta, it, trace, std::move(history));

    if (it >= config.max_iter) {
      SymmetrizationResult best = finish(A, best_theta, best_iter, best_trace, std::move(history));
      throw NoConvergenceError(std::move(best),
                               "symmetrize: no convergence within " +
                                   std::to_string(config.max_iter) + " iterations (best residual " +
                                   std::to_string(best.residual) + ")");
    }

    // gamma_i = (prod_j h_jj^{1/2})^{1/n} / h_ii^{1/2}; prod gamma_i = 1, so
    // prod theta_i stays 1 until the final rescale.
    const double log_gm = 0.5 * d.array().log().sum() / static_cast<double>(n);
    theta = theta.array() * (config.damping * (log_gm - 0.5 * d.array().log())).exp();
  }
}

std::pair<double, double> rotated_diagonal_bound(const Eigen::Ref<const Matrix>& H,
                                                 const Eigen::Ref<const Matrix>& U) {
  if (H.rows() != H.cols() || H.rows() != U.rows() || U.rows() != U.cols())
    throw Error(ErrorCode::InvalidDimension, "rotated_diagonal_bound: dimension mismatch");
  if (H.diagonal().minCoeff() < 1e-12)
    throw Error(ErrorCode::DegenerateDiagonal, "rotated_diagonal_bound: zero diagonal entry");
  const Index n = U.rows();
  if ((U.transpose() * U - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-8)
    throw Error(ErrorCode::InvalidOrthogonal, "rotated_diagonal_bound: U is not orthogonal");

  const Vector hu_diag = (H * U).diagonal();
  const double lhs = (hu_diag.array().square() / H.diagonal().array()).sum();
  const double rhs = H.trace();
  return {lhs, rhs};
}

std::pair<double, double> normalized_nuclear_bound(const Eigen::Ref<const Matrix>& H) {
  if (H.rows() != H.cols() || H.rows() == 0)
    throw Error(ErrorCode::InvalidDimension, "normalized_nuclear_bound: matrix must be square");
  if (H.diagonal().minCoeff() < 1e-12)
    throw Error(ErrorCode::DegenerateDiagonal, "normalized_nuclear_bound: zero diagonal entry");

  const Vector inv_sqrt = H.diagonal().cwiseSqrt().cwiseInverse();
  const double lhs = nuclear_norm(inv_sqrt.asDiagonal() * H);
  const double rhs = std::sqrt(static_cast<double>(H.rows())) * std::sqrt(nuclear_norm(H));
  return {lhs, rhs};
}

}  // namespace plank
