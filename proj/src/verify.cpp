#include "plank/verify.hpp"

#include <cmath>
#include <limits>

namespace plank {

namespace {

// Kahan-compensated accumulator; keeps oracle round-off an order of magnitude
// below the 1e-9 contract slacks.
class KahanSum {
 public:
  void add(double v) {
    const double y = v - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

double kahan_margin(const Matrix& A, const Vector& lambda, double m, Index row) {
  KahanSum acc;
  for (Index j = 0; j < lambda.size(); ++j) acc.add(A(row, j) * lambda[j]);
  acc.add(-m);
  return std::abs(acc.value());
}

void require(bool ok, VerificationReport& report, const std::string& constraint, double deficit) {
  if (!ok) report.failures.push_back({constraint, deficit});
}

}  // namespace

VerificationReport check_solution(const PlankSystem& sys, const Solution& sol, double tol) {
  const Index n = sys.A.rows();
  if (sys.A.cols() != n || sys.m.size() != n || sys.w.size() != n || sol.lambda.size() != n ||
      sol.margins.size() != n)
    throw Error(ErrorCode::InvalidDimension, "check_solution: dimension mismatch");

  VerificationReport report;

  KahanSum l1, l2sq, weighted;
  for (Index j = 0; j < n; ++j) {
    l1.add(std::abs(sol.lambda[j]));
    l2sq.add(sol.lambda[j] * sol.lambda[j]);
    weighted.add(sol.lambda[j] * sol.lambda[j] / sys.w[j]);
  }

  double worst_slack = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < n; ++i) {
    const double margin = kahan_margin(sys.A, sol.lambda, sys.m[i], i);
    require(std::abs(margin - sol.margins[i]) <= 1e-12, report,
            "stored_margin[" + std::to_string(i) + "]", std::abs(margin - sol.margins[i]));
    const double slack = margin - sys.w[i];
    worst_slack = std::min(worst_slack, slack);
    require(slack >= -tol, report, "margin[" + std::to_string(i) + "]", -slack);
  }
  report.worst_margin_slack = worst_slack;

  require(std::abs(l1.value() - sol.l1_norm) <= 1e-12, report, "stored_l1",
          std::abs(l1.value() - sol.l1_norm));
  require(std::abs(l2sq.value() - sol.l2sq_norm) <= 1e-12, report, "stored_l2sq",
          std::abs(l2sq.value() - sol.l2sq_norm));
  require(std::abs(weighted.value() - sol.weighted_norm) <= 1e-12, report, "stored_weighted",
          std::abs(weighted.value() - sol.weighted_norm));

  report.l1_slack = 1.0 - l1.value();
  report.l2sq_slack = 1.0 / static_cast<double>(n) - l2sq.value();
  report.weighted_slack = sys.w.sum() - weighted.value();

  // Certificate-specific norm bound.
  if (sol.certificate == CertificateKind::EqualWidth) {
    require(report.l2sq_slack >= -tol, report, "l2sq_bound", -report.l2sq_slack);
    require(report.l1_slack >= -tol, report, "l1_bound", -report.l1_slack);
  } else {
    require(report.l1_slack >= -tol, report, "l1_bound", -report.l1_slack);
  }

  report.feasible = report.failures.empty();
  return report;
}

VerificationReport check_homothet(const Body& body, const std::vector<Hyperplane>& planes,
                                  const HomothetResult& res, double tol) {
  const Index n = static_cast<Index>(planes.size());
  if (n == 0 || res.center.size() != body.dim() || res.margins.size() != n)
    throw Error(ErrorCode::InvalidDimension, "check_homothet: dimension mismatch");

  VerificationReport report;
  const double ratio = 1.0 / static_cast<double>(n + 1);
  require(std::abs(res.ratio - ratio) <= 1e-15, report, "ratio",
          std::abs(res.ratio - ratio));

  const NormalizedPlanes np = normalize_hyperplanes(body, planes);
  double worst_slack = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < n; ++i) {
    KahanSum acc;
    for (Index d = 0; d < body.dim(); ++d) acc.add(np.functionals(i, d) * res.center[d]);
    acc.add(-np.offsets[i]);
    const double margin = std::abs(acc.value());
    require(std::abs(margin - res.margins[i]) <= 1e-12, report,
            "stored_margin[" + std::to_string(i) + "]", std::abs(margin - res.margins[i]));
    const double slack = margin - ratio;
    worst_slack = std::min(worst_slack, slack);
    require(slack >= -tol, report, "margin[" + std::to_string(i) + "]", -slack);
  }
  report.worst_margin_slack = worst_slack;

  const double g = gauge(body, res.center);
  require(std::abs(g - res.body_norm_of_center) <= 1e-12, report, "stored_gauge",
          std::abs(g - res.body_norm_of_center));
  const double gauge_bound = 1.0 - ratio;
  require(g <= gauge_bound + tol, report, "gauge", g - gauge_bound);
  report.l1_slack = gauge_bound - g;  // containment slack for the homothet

  report.feasible = report.failures.empty();
  return report;
}

Vector recompute_bang_margins(const BangInstance& inst, const SignVector& eps) {
  const Index n = inst.H.rows();
  if (eps.signs.size() != n || inst.theta.size() != n || inst.mu.size() != n)
    throw Error(ErrorCode::InvalidDimension, "recompute_bang_margins: dimension mismatch");
  Vector out(n);
  for (Index i = 0; i < n; ++i) {
    KahanSum acc;
    for (Index j = 0; j < n; ++j) acc.add(inst.H(i, j) * eps.signs[j] * inst.theta[j]);
    acc.add(-inst.mu[i]);
    out[i] = acc.value();
  }
  return out;
}

std::optional<SignVector> exhaustive_signs(const BangInstance& inst) {
  const Index n = inst.H.rows();
  if (n > 20) throw Error(ErrorCode::TooLarge, "exhaustive_signs: n must be <= 20");
  if (inst.H.cols() != n || inst.theta.size() != n || inst.mu.size() != n)
    throw Error(ErrorCode::InvalidDimension, "exhaustive_signs: dimension mismatch");

  SignVector eps;
  eps.signs.resize(n);
  const std::uint64_t total = 1ull << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (Index j = 0; j < n; ++j)
      eps.signs[j] = (mask >> (n - 1 - j)) & 1u ? -1 : 1;
    const Vector margins = recompute_bang_margins(inst, eps);
    bool ok = true;
    for (Index i = 0; i < n; ++i) {
      if (inst.theta[i] <= 0.0) continue;
      if (std::abs(margins[i]) < inst.theta[i] - kBangSlack) {
        ok = false;
        break;
      }
    }
    if (ok) return eps;
  }
  return std::nullopt;
}

std::optional<Vector> grid_search_2d(const Body& body, const std::vector<Hyperplane>& planes,
                                     double ratio, int resolution) {
  if (body.dim() != 2) throw Error(ErrorCode::TooLarge, "grid_search_2d: body must be planar");
  if (resolution < 1 || resolution > 4096)
    throw Error(ErrorCode::TooLarge, "grid_search_2d: resolution must be in [1, 4096]");

  const NormalizedPlanes np = normalize_hyperplanes(body, planes);
  const Index n = np.offsets.size();

  // Bounding box half-extents: the support function of the body at +-e_i.
  Vector e0 = Vector::Zero(2), e1 = Vector::Zero(2);
  e0[0] = 1.0;
  e1[1] = 1.0;
  const double ext_x = dual_norm(body, e0);
  const double ext_y = dual_norm(body, e1);
  const double cell_x = 2.0 * ext_x / resolution;
  const double cell_y = 2.0 * ext_y / resolution;
  const double slack = 2.0 * std::hypot(cell_x, cell_y);

  std::optional<Vector> best;
  double best_min_margin = -std::numeric_limits<double>::infinity();
  double best_gauge = std::numeric_limits<double>::infinity();

  Vector x(2);
  for (int r = 0; r < resolution; ++r) {
    x[1] = -ext_y + cell_y * (r + 0.5);
    for (int c = 0; c < resolution; ++c) {
      x[0] = -ext_x + cell_x * (c + 0.5);
      const double g = gauge(body, x);
      if (g > 1.0 - ratio + slack) continue;
      double min_margin = std::numeric_limits<double>::infinity();
      for (Index i = 0; i < n && min_margin >= ratio - slack; ++i) {
        const double margin = std::abs(np.functionals.row(i).dot(x) - np.offsets[i]);
        min_margin = std::min(min_margin, margin);
      }
      if (min_margin < ratio - slack) continue;
      if (min_margin > best_min_margin ||
          (min_margin == best_min_margin && g < best_gauge)) {
        best = x;
        best_min_margin = min_margin;
        best_gauge = g;
      }
    }
  }
  return best;
}

}  // namespace plank
