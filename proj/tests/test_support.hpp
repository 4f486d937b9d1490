#pragma once

// Seeded instance generators shared by the unit and acceptance suites.

#include <limits>
#include <random>

#include "plank/kernel.hpp"
#include "plank/types.hpp"

namespace plank::testing {

inline Matrix random_unit_diagonal(Index n, std::mt19937_64& rng, double spread = 1.0) {
  std::uniform_real_distribution<double> u(-spread, spread);
  Matrix A(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) A(i, j) = i == j ? 1.0 : u(rng);
  return A;
}

inline Vector random_vector(Index n, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

inline Matrix random_matrix(Index n, std::mt19937_64& rng, double spread = 1.0) {
  std::uniform_real_distribution<double> u(-spread, spread);
  Matrix M(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) M(i, j) = u(rng);
  return M;
}

// Symmetric PSD with eigenvalues in [lo, hi].
inline Matrix random_psd(Index n, std::mt19937_64& rng, double lo = 0.1, double hi = 2.0) {
  const Matrix Q = random_orthogonal(n, rng());
  const Vector evals = random_vector(n, rng, lo, hi);
  Matrix H = Q * evals.asDiagonal() * Q.transpose();
  return 0.5 * (H + H.transpose()).eval();
}

// Symmetric PSD with exactly unit diagonal (a correlation-style matrix).
inline Matrix random_psd_unit_diagonal(Index n, std::mt19937_64& rng) {
  Matrix H = random_psd(n, rng, 0.2, 2.0);
  const Vector d = H.diagonal().cwiseSqrt().cwiseInverse();
  H = d.asDiagonal() * H * d.asDiagonal();
  H.diagonal().setOnes();
  return 0.5 * (H + H.transpose()).eval();
}

// Positive widths with the prescribed sum; each at least 0.1/n of the total.
inline Vector random_widths(Index n, std::mt19937_64& rng, double total) {
  Vector w = random_vector(n, rng, 0.2, 1.0);
  w *= total / w.sum();
  return w;
}

// Ill-conditioned matrix with singular values spanning `cond` orders.
inline Matrix random_conditioned(Index n, std::mt19937_64& rng, double cond) {
  const Matrix Q1 = random_orthogonal(n, rng());
  const Matrix Q2 = random_orthogonal(n, rng());
  Vector s(n);
  for (Index i = 0; i < n; ++i)
    s[i] = std::pow(cond, -static_cast<double>(i) / std::max<Index>(1, n - 1));
  return Q1 * s.asDiagonal() * Q2.transpose();
}

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace plank::testing
