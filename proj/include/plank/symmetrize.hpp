#pragma once

#include <utility>
#include <vector>

#include "plank/types.hpp"

namespace plank {

struct ScalingConfig {
  double tol = 1e-10;   // diagonal-constancy target, relative to the mean diagonal
  int max_iter = 10000;
  double damping = 1.0;  // in (0, 1]; 1.0 gives the monotone full step
};

/// Output of symmetrize(): positive scaling theta and orthogonal U such that
/// H = diag(theta) * A * U is symmetric PSD with unit diagonal.
struct SymmetrizationResult {
  Vector theta;
  Matrix U;
  Matrix H;
  int iterations = 0;
  double residual = 0.0;       // max_i |h_ii - 1| after the final rescale
  double nuclear_trace = 0.0;  // trace of H at convergence, before the final rescale
  std::vector<double> nuclear_history;  // nuclear norm of diag(theta)*A per iterate
};

/// Error carrying the best iterate when the scaling iteration hits max_iter.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(SymmetrizationResult best, const std::string& what)
      : Error(ErrorCode::NoConvergence, what), best_(std::move(best)) {}

  const SymmetrizationResult& best() const noexcept { return best_; }

 private:
  SymmetrizationResult best_;
};

/// Finds theta > 0 and orthogonal U making diag(theta) * A * U symmetric PSD
/// with unit diagonal.  A multiplicative geometric-mean rescaling of theta;
/// each full-damping step does not increase the nuclear norm of diag(theta)*A,
/// and the iteration stops once the diagonal of the PSD polar factor is
/// constant to within config.tol (relative to its mean).
SymmetrizationResult symmetrize(const Eigen::Ref<const Matrix>& A, const ScalingConfig& config = {});

/// For symmetric PSD H with nonzero diagonal and orthogonal U, evaluates
///   lhs = sum_i (HU)_ii^2 / h_ii,   rhs = trace(H).
/// The lhs never exceeds the rhs.
std::pair<double, double> rotated_diagonal_bound(const Eigen::Ref<const Matrix>& H,
                                                 const Eigen::Ref<const Matrix>& U);

/// For symmetric PSD H with nonzero diagonal, evaluates
///   lhs = nuclear_norm of (h_ij / sqrt(h_ii)),   rhs = sqrt(n) * nuclear_norm(H)^{1/2}.
/// The lhs never exceeds the rhs.
std::pair<double, double> normalized_nuclear_bound(const Eigen::Ref<const Matrix>& H);

}  // namespace plank
