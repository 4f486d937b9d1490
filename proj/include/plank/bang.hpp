#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "plank/types.hpp"

namespace plank {

/// Inputs of the sign-choice problem: symmetric unit-diagonal H, non-negative
/// weights theta and real targets mu.  A sign vector eps is feasible when
/// |sum_j h_ij eps_j theta_j - mu_i| >= theta_i for every row with theta_i > 0.
struct BangInstance {
  Matrix H;
  Vector theta;
  Vector mu;
};

struct SignVector {
  Eigen::VectorXi signs;  // entries exactly -1 or +1
};

/// Margin slack below which a row counts as violated.
inline constexpr double kBangSlack = 1e-9;

struct BangResult {
  SignVector signs;
  long flips = 0;
  /// Objective value after the initial assignment and after each flip.
  /// Populated only when bang_signs is called with track_objective = true.
  std::vector<double> objective_history;
};

class FlipBudgetError : public Error {
 public:
  FlipBudgetError(SignVector best, std::vector<Index> violations, const std::string& what)
      : Error(ErrorCode::FlipBudgetExceeded, what),
        best_(std::move(best)),
        violations_(std::move(violations)) {}

  const SignVector& best() const noexcept { return best_; }
  const std::vector<Index>& violations() const noexcept { return violations_; }

 private:
  SignVector best_;
  std::vector<Index> violations_;
};

/// The quadratic objective the flips ascend:
///   F(eps) = sum_{i,j} h_ij eps_i eps_j theta_i theta_j - 2 sum_i eps_i theta_i mu_i.
double bang_objective(const BangInstance& inst, const SignVector& eps);

/// Violation-driven local search.  Starts from all +1 and, while some row
/// violates its margin, flips the coordinate with the largest objective gain
/// (ties to the lowest index).  Every flip strictly increases the objective,
/// so the search terminates; the symmetry of H is what makes a violated row
/// yield a positive gain.  `restarts` seeded-random restarts are attempted
/// only if the flip budget is exhausted, which exact arithmetic rules out.
BangResult bang_signs(const BangInstance& inst, long max_flips = 1'000'000,
                      bool track_objective = false, int restarts = 0, std::uint64_t seed = 0);

/// As bang_signs, but from caller-chosen initial signs.
BangResult bang_signs_from(const BangInstance& inst, const SignVector& initial, long max_flips,
                           bool track_objective = false);

/// One row of the asymmetric 2x2 counterexample report.
struct CounterexampleCase {
  SignVector signs;
  Vector row_values;  // sum_j h_ij eps_j theta_j - mu_i per row
  bool feasible = false;
};

struct CounterexampleReport {
  BangInstance instance;
  std::vector<CounterexampleCase> cases;
  bool any_feasible = false;
};

/// Exhaustively checks all four sign vectors against the margin condition for
/// the non-symmetric matrix [[1, 1], [-1, 1]] with theta = (1, 1), mu = (0, 0),
/// documenting why bang_signs demands symmetry: none is feasible.
CounterexampleReport reject_asymmetric_counterexample();

}  // namespace plank
