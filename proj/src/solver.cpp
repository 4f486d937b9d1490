#include "plank/solver.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

#include "plank/bang.hpp"
#include "plank/kernel.hpp"

namespace plank {

namespace {

constexpr double kPostSlack = 1e-9;
constexpr Index kMaxSheets = 20000;

void check_unit_diagonal_square(const Eigen::Ref<const Matrix>& A, const char* op) {
  if (A.rows() != A.cols() || A.rows() == 0)
    throw Error(ErrorCode::InvalidMatrix, std::string(op) + ": matrix must be square and non-empty");
  if (!A.allFinite())
    throw Error(ErrorCode::InvalidMatrix, std::string(op) + ": non-finite entries");
  if ((A.diagonal().array() - 1.0).abs().maxCoeff() > 1e-10)
    throw Error(ErrorCode::InvalidMatrix, std::string(op) + ": diagonal entries must equal 1");
}

void fill_norms(Solution& sol, const Vector& w) {
  sol.l1_norm = sol.lambda.lpNorm<1>();
  sol.l2sq_norm = sol.lambda.squaredNorm();
  sol.weighted_norm = (sol.lambda.array().square() / w.array()).sum();
}

Vector signed_theta(const Vector& theta, const SignVector& eps) {
  Vector s = theta;
  for (Index j = 0; j < s.size(); ++j) s[j] *= eps.signs[j];
  return s;
}

// ---------------------------------------------------------------------------
// Sheet replication
// ---------------------------------------------------------------------------

struct SheetLayout {
  Eigen::VectorXi counts;    // k_i = floor(w_i N) + 1
  std::vector<Index> group;  // sheet -> plank
  Vector midpoints;          // per sheet
  Index K = 0;
  long N = 0;
};

SheetLayout build_sheets(const PlankSystem& sys, long N) {
  const Index n = sys.A.rows();
  SheetLayout layout;
  layout.N = N;
  layout.counts.resize(n);
  Index K = 0;
  for (Index i = 0; i < n; ++i) {
    layout.counts[i] = static_cast<int>(std::floor(sys.w[i] * static_cast<double>(N))) + 1;
    K += layout.counts[i];
  }
  layout.K = K;
  layout.group.reserve(static_cast<std::size_t>(K));
  layout.midpoints.resize(K);
  Index r = 0;
  for (Index i = 0; i < n; ++i) {
    const int k = layout.counts[i];
    // Sheet midpoints run from m_i - w_i + 1/N to m_i + w_i - 1/N so the
    // open radius-1/K intervals around them overhang the plank ends.
    for (int t = 0; t < k; ++t, ++r) {
      layout.group.push_back(i);
      if (k == 1) {
        layout.midpoints[r] = sys.m[i];
      } else {
        const double lo = sys.m[i] - sys.w[i] + 1.0 / static_cast<double>(N);
        const double span = 2.0 * sys.w[i] - 2.0 / static_cast<double>(N);
        layout.midpoints[r] = lo + span * static_cast<double>(t) / static_cast<double>(k - 1);
      }
    }
  }
  return layout;
}

// Orthonormal basis of the complement of the (full-column-rank) X.
Matrix orthogonal_complement(const Matrix& X) {
  const Index rows = X.rows(), cols = X.cols();
  if (rows == cols) return Matrix(rows, 0);
  Eigen::HouseholderQR<Matrix> qr(X);
  Matrix Q = qr.householderQ();
  return Q.rightCols(rows - cols);
}

struct ReplicatedSym {
  Vector theta;  // per sheet; constant within each group
  Matrix H;      // K x K, symmetric PSD, unit diagonal
  Matrix U;      // K x K orthogonal
  int iterations = 0;
  double residual = 0.0;
  double nuclear_trace = 0.0;
};

// Symmetrization of the replicated system.  Rows and columns of the K-system
// repeat those of A, so the scaling stays constant within each group and the
// whole iteration collapses onto the n x n matrix
//   B(tau) = diag(tau_i sqrt(k_i)) * A * diag(sqrt(k_j)),
// whose PSD polar factor carries the K-level diagonal as Hhat_ii / k_i.
ReplicatedSym symmetrize_replicated(const PlankSystem& sys, const SheetLayout& layout,
                                    const ScalingConfig& cfg) {
  const Index n = sys.A.rows();
  const Index K = layout.K;
  const Vector k = layout.counts.cast<double>();
  const Vector sqrtk = k.cwiseSqrt();

  Vector tau = Vector::Ones(n);
  double trace = 0.0;
  int iterations = 0;
  for (int it = 0;; ++it) {
    const Matrix B = tau.cwiseProduct(sqrtk).asDiagonal() * sys.A * sqrtk.asDiagonal();
    const Matrix Hhat = polar_decompose(B).psd_part;
    const Vector h = Hhat.diagonal().cwiseQuotient(k);
    if (h.minCoeff() < 1e-12)
      throw Error(ErrorCode::DegenerateDiagonal,
                  "replicate: diagonal entry collapsed during scaling");
    trace = Hhat.trace();
    const double hbar = trace / static_cast<double>(K);
    const double spread = (h.array() - hbar).abs().maxCoeff();
    if (spread <= cfg.tol * hbar) {
      tau /= hbar;
      iterations = it;
      break;
    }
    if (it >= cfg.max_iter)
      throw Error(ErrorCode::NoConvergence,
                  "replicate: scaling did not converge within " + std::to_string(cfg.max_iter) +
                      " iterations");
    const double log_gm = 0.5 * (k.array() * h.array().log()).sum() / static_cast<double>(K);
    tau = tau.array() * (cfg.damping * (log_gm - 0.5 * h.array().log())).exp();
  }

  const Matrix B = tau.cwiseProduct(sqrtk).asDiagonal() * sys.A * sqrtk.asDiagonal();
  const SvdFactors f = signed_svd(B);

  // Thin K-level singular bases: rows of the n-level bases spread over the
  // sheets of their group, scaled by 1/sqrt(k_i).
  Matrix Wt(K, n), Vt(K, n);
  for (Index r = 0; r < K; ++r) {
    const Index i = layout.group[static_cast<std::size_t>(r)];
    Wt.row(r) = f.W.row(i) / sqrtk[i];
    Vt.row(r) = f.V.row(i) / sqrtk[i];
  }

  ReplicatedSym rep;
  rep.H = Wt * f.sigma.asDiagonal() * Wt.transpose();
  rep.H = 0.5 * (rep.H + rep.H.transpose()).eval();
  const Matrix Wperp = orthogonal_complement(Wt);
  const Matrix Vperp = orthogonal_complement(Vt);
  rep.U = Vt * Wt.transpose() + Vperp * Wperp.transpose();
  rep.theta.resize(K);
  for (Index r = 0; r < K; ++r) rep.theta[r] = tau[layout.group[static_cast<std::size_t>(r)]];
  rep.iterations = iterations;
  rep.residual = (rep.H.diagonal().array() - 1.0).abs().maxCoeff();
  rep.nuclear_trace = trace;
  return rep;
}

// Greedy post-pass over the feasible sign vectors of the replicated system:
// a flip is taken when it keeps every sheet margin feasible and strictly
// decreases the folded weighted norm sum_j lambda_j^2 / w_j.  Margins and the
// l1 certificate only need feasibility, so this cannot lose them, and it
// steers the folded point from "far outside the planks" to "just outside",
// which is where the weighted norm approaches sum w_j.
long refine_replicated_signs(const Matrix& H, const Matrix& U, const Vector& theta,
                             const Vector& mu, const SheetLayout& layout, const Vector& w,
                             Eigen::VectorXi& eps) {
  const Index K = H.rows();
  const Index n = w.size();

  Vector s(K);
  for (Index r = 0; r < K; ++r) s[r] = eps[r] * theta[r];
  Vector S = H * s;

  // fold = G * s with G(j, r) = U(r, .)-column sums per group / K
  Matrix G = Matrix::Zero(n, K);
  for (Index r = 0; r < K; ++r)
    G.row(layout.group[static_cast<std::size_t>(r)]) += U.row(r) / static_cast<double>(K);
  Vector fold = G * s;

  const auto weighted = [&](const Vector& fv) { return (fv.array().square() / w.array()).sum(); };
  double current = weighted(fold);

  long flips = 0;
  for (int sweep = 0; sweep < 200; ++sweep) {
    bool improved = false;
    for (Index kk = 0; kk < K; ++kk) {
      const double ds = -2.0 * s[kk];
      const Vector trial_fold = fold + ds * G.col(kk);
      const double trial = weighted(trial_fold);
      if (!(trial < current - 1e-15)) continue;

      bool feasible = true;
      for (Index i = 0; i < K; ++i) {
        const double Si = S[i] + ds * H(i, kk);
        if (std::abs(Si - mu[i]) < theta[i] - kBangSlack) {
          feasible = false;
          break;
        }
      }
      if (!feasible) continue;

      eps[kk] = -eps[kk];
      s[kk] = -s[kk];
      S += ds * H.col(kk);
      fold = trial_fold;
      current = trial;
      ++flips;
      improved = true;
    }
    if (!improved) break;
  }
  return flips;
}

void validate_system(const PlankSystem& sys, const char* op) {
  check_unit_diagonal_square(sys.A, op);
  const Index n = sys.A.rows();
  if (sys.m.size() != n || sys.w.size() != n)
    throw Error(ErrorCode::InvalidDimension, std::string(op) + ": m/w size must match A");
  if (!sys.m.allFinite() || !sys.w.allFinite())
    throw Error(ErrorCode::InvalidMatrix, std::string(op) + ": non-finite m or w");
  if (sys.w.minCoeff() <= 0.0)
    throw Error(ErrorCode::InvalidMatrix, std::string(op) + ": half-widths must be positive");
}

Solution solve_replicate(const PlankSystem& sys, int requested_resolution,
                         const ScalingConfig& config, long max_flips) {
  const Index n = sys.A.rows();
  const double slack = 1.0 - sys.w.sum();
  if (slack <= 0.0)
    throw Error(ErrorCode::InsufficientSlack,
                "replicate: sum of half-widths must be strictly below 1; "
                "shrink w (e.g. multiply by 1 - 1e-6)");

  const bool auto_mode = requested_resolution <= 0;
  long N = auto_mode ? static_cast<long>(std::ceil(2.0 * static_cast<double>(n) / slack))
                     : requested_resolution;

  SheetLayout layout;
  for (int attempt = 0;; ++attempt) {
    layout = build_sheets(sys, N);
    if (layout.K <= N) break;
    if (!auto_mode || attempt >= 3)
      throw Error(ErrorCode::ResolutionTooCoarse,
                  "replicate: " + std::to_string(layout.K) + " sheets exceed resolution " +
                      std::to_string(N) + "; increase the sheet resolution");
    N *= 2;
  }
  if (layout.K > kMaxSheets)
    throw Error(ErrorCode::TooLarge,
                "replicate: " + std::to_string(layout.K) +
                    " sheets; shrink the instance or lower the resolution");

  ReplicatedSym rep = symmetrize_replicated(sys, layout, config);
  const double theta_sq = rep.theta.squaredNorm();
  if (theta_sq > static_cast<double>(layout.K) + 1e-8)
    throw Error(ErrorCode::CertificateViolation,
                "replicate: sum theta^2 exceeds the system size");

  const Vector mu = static_cast<double>(layout.K) * rep.theta.cwiseProduct(layout.midpoints);
  BangResult bang = bang_signs({rep.H, rep.theta, mu}, max_flips);

  Eigen::VectorXi eps = bang.signs.signs;
  const long extra = refine_replicated_signs(rep.H, rep.U, rep.theta, mu, layout, sys.w, eps);

  const Vector s = signed_theta(rep.theta, SignVector{eps});
  const Vector sheet_lambda = (rep.U * s) / static_cast<double>(layout.K);
  Vector lambda = Vector::Zero(n);
  for (Index r = 0; r < layout.K; ++r)
    lambda[layout.group[static_cast<std::size_t>(r)]] += sheet_lambda[r];

  Solution sol;
  sol.lambda = lambda;
  sol.margins = (sys.A * lambda - sys.m).cwiseAbs();
  fill_norms(sol, sys.w);
  sol.certificate = CertificateKind::Replicated;
  sol.sheets = static_cast<int>(N);
  sol.stats = {rep.iterations, rep.residual, bang.flips + extra, static_cast<int>(N), layout.K};

  if ((sol.margins - sys.w).minCoeff() < -kPostSlack || sol.l1_norm > 1.0 + kPostSlack)
    throw Error(ErrorCode::CertificateViolation, "replicate: assembled solution failed post-check");
  return sol;
}

Solution solve_direct_weighted(const PlankSystem& sys, int requested_resolution,
                               const ScalingConfig& config, long max_flips) {
  SymmetrizationResult sym = symmetrize(sys.A, config);
  BangResult bang =
      bang_signs({sym.H, sym.theta.cwiseProduct(sys.w), sym.theta.cwiseProduct(sys.m)}, max_flips);

  const Vector s = signed_theta(sym.theta.cwiseProduct(sys.w), bang.signs);
  Solution sol;
  sol.lambda = sym.U * s;
  sol.margins = (sys.A * sol.lambda - sys.m).cwiseAbs();
  fill_norms(sol, sys.w);

  // The weighted pipeline certifies margins but not norms; fall back to the
  // replicated construction when the l1 post-check fails.
  if (sol.l1_norm > 1.0 + kPostSlack)
    return solve_replicate(sys, requested_resolution, config, max_flips);

  sol.certificate = CertificateKind::DirectWeighted;
  sol.stats = {sym.iterations, sym.residual, bang.flips, 0, sys.A.rows()};
  if ((sol.margins - sys.w).minCoeff() < -kPostSlack)
    throw Error(ErrorCode::CertificateViolation,
                "direct weighted: assembled solution failed margin post-check");
  return sol;
}

}  // namespace

const char* to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::EqualWidth: return "equal_width";
    case CertificateKind::Replicated: return "replicated";
    case CertificateKind::DirectWeighted: return "direct_weighted";
  }
  return "unknown";
}

Solution solve_equal_width(const Eigen::Ref<const Matrix>& A, const Eigen::Ref<const Vector>& m,
                           const ScalingConfig& config, long max_flips) {
  check_unit_diagonal_square(A, "solve_equal_width");
  const Index n = A.rows();
  if (m.size() != n)
    throw Error(ErrorCode::InvalidDimension, "solve_equal_width: m size must match A");
  if (!m.allFinite()) throw Error(ErrorCode::InvalidMatrix, "solve_equal_width: non-finite m");

  SymmetrizationResult sym = symmetrize(A, config);
  if (sym.theta.squaredNorm() > static_cast<double>(n) + 1e-8)
    throw Error(ErrorCode::CertificateViolation, "solve_equal_width: sum theta^2 exceeds n");

  const Vector mu = static_cast<double>(n) * sym.theta.cwiseProduct(m);
  BangResult bang = bang_signs({sym.H, sym.theta, mu}, max_flips);

  Solution sol;
  sol.lambda = (sym.U * signed_theta(sym.theta, bang.signs)) / static_cast<double>(n);
  sol.margins = (A * sol.lambda - m).cwiseAbs();
  fill_norms(sol, Vector::Constant(n, 1.0 / static_cast<double>(n)));
  sol.certificate = CertificateKind::EqualWidth;
  sol.stats = {sym.iterations, sym.residual, bang.flips, 0, n};

  const double bound = 1.0 / static_cast<double>(n);
  if (sol.l2sq_norm > bound + kPostSlack || sol.margins.minCoeff() < bound - kPostSlack)
    throw Error(ErrorCode::CertificateViolation,
                "solve_equal_width: assembled solution failed post-check");
  return sol;
}

Solution solve_general(const PlankSystem& sys, Strategy strategy, int sheet_resolution,
                       const ScalingConfig& config, long max_flips) {
  validate_system(sys, "solve_general");
  if (sys.w.sum() >= 1.0)
    throw Error(ErrorCode::InsufficientSlack,
                "solve_general: sum of half-widths must be strictly below 1; "
                "shrink w (e.g. multiply by 1 - 1e-6)");
  if (strategy == Strategy::DirectWeighted)
    return solve_direct_weighted(sys, sheet_resolution, config, max_flips);
  return solve_replicate(sys, sheet_resolution, config, max_flips);
}

DualSolution solve_dual(const Body& body, const std::vector<Vector>& points,
                        const Eigen::Ref<const Vector>& m, const Eigen::Ref<const Vector>& w,
                        Strategy strategy, int sheet_resolution, const ScalingConfig& config,
                        long max_flips) {
  const Index n = static_cast<Index>(points.size());
  if (n == 0) throw Error(ErrorCode::InvalidDimension, "solve_dual: need at least one point");
  if (m.size() != n || w.size() != n)
    throw Error(ErrorCode::InvalidDimension, "solve_dual: m/w size must match the point count");

  Matrix X(body.dim(), n);   // unit-gauge points
  Matrix Psi(body.dim(), n); // their norming functionals
  for (Index j = 0; j < n; ++j) {
    if (points[static_cast<std::size_t>(j)].size() != body.dim())
      throw Error(ErrorCode::InvalidDimension, "solve_dual: point dimension mismatch");
    if (std::abs(gauge(body, points[static_cast<std::size_t>(j)]) - 1.0) > 1e-9)
      throw Error(ErrorCode::NotNormalized, "solve_dual: point " + std::to_string(j) +
                                                " does not have unit gauge");
    X.col(j) = points[static_cast<std::size_t>(j)];
    Psi.col(j) = norming_functional(body, X.col(j));
  }

  PlankSystem sys{X.transpose() * Psi, m, w};
  Solution inner = solve_general(sys, strategy, sheet_resolution, config, max_flips);

  DualSolution dual;
  dual.phi = Psi * inner.lambda;
  dual.lambda = inner.lambda;
  dual.margins = (sys.A * inner.lambda - m).cwiseAbs();
  dual.dual_norm_value = dual_norm(body, dual.phi);
  dual.inner = std::move(inner);
  return dual;
}

}  // namespace plank
