#pragma once

#include <vector>

#include "plank/geometry.hpp"
#include "plank/symmetrize.hpp"
#include "plank/types.hpp"

namespace plank {

/// A matrix plank instance: unit-diagonal pairing matrix A, midpoints m and
/// positive half-widths w with sum(w) <= 1.
struct PlankSystem {
  Matrix A;
  Vector m;
  Vector w;
};

enum class Strategy { Replicate, DirectWeighted };

enum class CertificateKind { EqualWidth, Replicated, DirectWeighted };

struct SolveStats {
  int iterations = 0;      // scaling iterations
  double residual = 0.0;   // symmetrization residual
  long flips = 0;          // sign flips (including any refinement flips)
  int sheet_resolution = 0;  // N, replicate path only
  Index system_size = 0;     // rows of the system actually solved
};

struct Solution {
  Vector lambda;
  Vector margins;  // |sum_j a_ij lambda_j - m_i|
  double l1_norm = 0.0;
  double l2sq_norm = 0.0;
  double weighted_norm = 0.0;  // sum_j lambda_j^2 / w_j
  CertificateKind certificate = CertificateKind::EqualWidth;
  int sheets = 0;  // N for the Replicated certificate
  SolveStats stats;
};

inline constexpr int kAutoResolution = 0;

/// Equal-width pipeline: symmetrize A, choose signs, assemble
/// lambda_k = (1/n) sum_j u_kj eps_j theta_j.  The result satisfies
/// sum lambda^2 <= 1/n and every margin >= 1/n (within 1e-9).
Solution solve_equal_width(const Eigen::Ref<const Matrix>& A, const Eigen::Ref<const Vector>& m,
                           const ScalingConfig& config = {}, long max_flips = 1'000'000);

/// General widths with sum(w) < 1.  Replicate covers each plank by
/// equal-width sheets (k_i = floor(w_i N) + 1 of them at resolution N),
/// solves the replicated K-system and folds the coefficients back; it
/// guarantees margins >= w_i and sum|lambda| <= 1 (within 1e-9).
/// DirectWeighted runs the n-sized pipeline with theta scaled by w; its
/// margins are guaranteed but its norm certificate is post-hoc only, so it
/// falls back to Replicate when sum|lambda| > 1.
Solution solve_general(const PlankSystem& sys, Strategy strategy = Strategy::Replicate,
                       int sheet_resolution = kAutoResolution, const ScalingConfig& config = {},
                       long max_flips = 1'000'000);

/// A norm-1 functional separated from prescribed values at unit vectors:
/// phi = sum_j lambda_j psi_j with the psi_j norming functionals of the
/// points, dual norm <= 1 and |<phi, x_i> - m_i| >= w_i (within 1e-9).
struct DualSolution {
  Vector phi;
  Vector lambda;
  Vector margins;
  double dual_norm_value = 0.0;
  Solution inner;
};

DualSolution solve_dual(const Body& body, const std::vector<Vector>& points,
                        const Eigen::Ref<const Vector>& m, const Eigen::Ref<const Vector>& w,
                        Strategy strategy = Strategy::Replicate,
                        int sheet_resolution = kAutoResolution, const ScalingConfig& config = {},
                        long max_flips = 1'000'000);

const char* to_string(CertificateKind kind);

}  // namespace plank
