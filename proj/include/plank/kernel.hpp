#pragma once

#include <cstdint>

#include "plank/types.hpp"

namespace plank {

/// Result of the left polar decomposition M = psd_part * orthogonal_part.
struct PolarFactors {
  Matrix psd_part;         // symmetric positive semi-definite
  Matrix orthogonal_part;  // orthogonal
};

/// Full SVD M = W * sigma.asDiagonal() * V^T with a reproducible sign
/// convention: the first nonzero component of every left singular vector is
/// positive.
struct SvdFactors {
  Matrix W;
  Vector sigma;
  Matrix V;
};

SvdFactors signed_svd(const Eigen::Ref<const Matrix>& M);

/// Nuclear (trace-class) norm: the sum of singular values of a square matrix.
/// Equals max over orthogonal U of trace(M * U); for symmetric PSD input this
/// is just the trace.
double nuclear_norm(const Eigen::Ref<const Matrix>& M);

/// Left polar decomposition via SVD: M = W S V^T gives
/// psd_part = W S W^T (the PSD square root of M M^T) and
/// orthogonal_part = W V^T.  For singular M the orthogonal factor is completed
/// deterministically by pairing leftover singular vectors in index order.
PolarFactors polar_decompose(const Eigen::Ref<const Matrix>& M);

/// Symmetric PSD square root.  Eigenvalues in [-1e-8, 0) are clamped to zero;
/// anything more negative is treated as genuinely indefinite.
Matrix psd_sqrt(const Eigen::Ref<const Matrix>& H);

/// Deterministic random orthogonal matrix: the orthogonal polar factor of a
/// seeded Gaussian matrix.
Matrix random_orthogonal(Index n, std::uint64_t seed);

}  // namespace plank
