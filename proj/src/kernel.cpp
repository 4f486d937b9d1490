#include "plank/kernel.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

namespace plank {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::InvalidBody: return "InvalidBody";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NullRow: return "NullRow";
    case ErrorCode::DegenerateDiagonal: return "DegenerateDiagonal";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::FlipBudgetExceeded: return "FlipBudgetExceeded";
    case ErrorCode::InsufficientSlack: return "InsufficientSlack";
    case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorCode::CertificateViolation: return "CertificateViolation";
    case ErrorCode::NonNormable: return "NonNormable";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::InvalidOrthogonal: return "InvalidOrthogonal";
    case ErrorCode::NullNormal: return "NullNormal";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

namespace {

void require_square_finite(const Eigen::Ref<const Matrix>& M, const char* op) {
  if (M.rows() != M.cols() || M.rows() == 0)
    throw Error(ErrorCode::InvalidMatrix, std::string(op) + ": matrix must be square and non-empty");
  if (!M.allFinite())
    throw Error(ErrorCode::InvalidMatrix, std::string(op) + ": matrix has non-finite entries");
}

// Make the first nonzero component of each left singular vector positive,
// flipping the paired right vector so W S V^T is unchanged.
void normalize_svd_signs(Matrix& W, Matrix& V) {
  for (Index k = 0; k < W.cols(); ++k) {
    for (Index r = 0; r < W.rows(); ++r) {
      const double v = W(r, k);
      if (v != 0.0) {
        if (v < 0.0) {
          W.col(k) = -W.col(k);
          V.col(k) = -V.col(k);
        }
        break;
      }
    }
  }
}

}  // namespace

double nuclear_norm(const Eigen::Ref<const Matrix>& M) {
  require_square_finite(M, "nuclear_norm");
  Eigen::JacobiSVD<Matrix> svd(M);
  return svd.singularValues().sum();
}

SvdFactors signed_svd(const Eigen::Ref<const Matrix>& M) {
  require_square_finite(M, "signed_svd");
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdFactors f{svd.matrixU(), svd.singularValues(), svd.matrixV()};
  normalize_svd_signs(f.W, f.V);
  return f;
}

PolarFactors polar_decompose(const Eigen::Ref<const Matrix>& M) {
  SvdFactors s = signed_svd(M);
  PolarFactors f;
  f.psd_part = s.W * s.sigma.asDiagonal() * s.W.transpose();
  f.psd_part = 0.5 * (f.psd_part + f.psd_part.transpose()).eval();
  f.orthogonal_part = s.W * s.V.transpose();
  return f;
}

Matrix psd_sqrt(const Eigen::Ref<const Matrix>& H) {
  require_square_finite(H, "psd_sqrt");
  const double asym = (H - H.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10)
    throw Error(ErrorCode::NotPSD, "psd_sqrt: input asymmetric beyond tolerance");

  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (H + H.transpose()));
  Vector evals = es.eigenvalues();
  if (evals.minCoeff() < -1e-8)
    throw Error(ErrorCode::NotPSD, "psd_sqrt: eigenvalue below -1e-8, input is indefinite");
  evals = evals.cwiseMax(0.0);

  Matrix T = es.eigenvectors() * evals.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
  return 0.5 * (T + T.transpose()).eval();
}

Matrix random_orthogonal(Index n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::InvalidDimension, "random_orthogonal: n must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix G(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) G(i, j) = gauss(rng);
  return polar_decompose(G).orthogonal_part;
}

}  // namespace plank
