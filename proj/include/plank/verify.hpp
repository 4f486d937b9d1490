#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plank/bang.hpp"
#include "plank/geometry.hpp"
#include "plank/solver.hpp"
#include "plank/types.hpp"

namespace plank {

struct ConstraintFailure {
  std::string constraint;
  double deficit = 0.0;
};

struct VerificationReport {
  bool feasible = false;
  double worst_margin_slack = 0.0;  // min_i (margin_i - w_i)
  double l1_slack = 0.0;            // 1 - sum|lambda|
  double l2sq_slack = 0.0;          // 1/n - sum lambda^2 (equal-width bound)
  double weighted_slack = 0.0;      // sum w - sum lambda^2/w (informational)
  std::vector<ConstraintFailure> failures;
};

/// Recomputes every margin and norm from scratch with compensated summation
/// and checks the solution against its certificate: margins >= w_i - tol
/// always, plus sum lambda^2 <= 1/n + tol for the equal-width certificate and
/// sum|lambda| <= 1 + tol otherwise.  Stored margins and norms must agree
/// with the recomputation to 1e-12.
VerificationReport check_solution(const PlankSystem& sys, const Solution& sol, double tol);

/// Independent check of a homothet construction: recomputes the normalized
/// functionals, the gauge of the center and every margin.
VerificationReport check_homothet(const Body& body, const std::vector<Hyperplane>& planes,
                                  const HomothetResult& res, double tol);

/// Compensated recomputation of sum_j h_ij eps_j theta_j - mu_i per row;
/// deliberately separate from the solver's own margin code.
Vector recompute_bang_margins(const BangInstance& inst, const SignVector& eps);

/// Enumerates all 2^n sign vectors in lexicographic order (+1 before -1) and
/// returns the first margin-feasible one, or nothing if none exists.
/// Requires n <= 20.
std::optional<SignVector> exhaustive_signs(const BangInstance& inst);

/// Scans a resolution x resolution grid over the bounding box of a planar
/// body for centers x with gauge(x) <= 1 - ratio and every normalized margin
/// >= ratio, both relaxed by twice the grid cell diagonal.  Returns the best
/// center found (largest minimum margin, then smallest gauge) or nothing.
std::optional<Vector> grid_search_2d(const Body& body, const std::vector<Hyperplane>& planes,
                                     double ratio, int resolution);

}  // namespace plank
