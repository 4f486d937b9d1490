#include "plank/bang.hpp"

#include <cmath>
#include <random>

namespace plank {

namespace {

void validate_instance(const BangInstance& inst) {
  const Index n = inst.H.rows();
  if (inst.H.cols() != n || n == 0)
    throw Error(ErrorCode::InvalidDimension, "bang: H must be square and non-empty");
  if (inst.theta.size() != n || inst.mu.size() != n)
    throw Error(ErrorCode::InvalidDimension, "bang: theta/mu size must match H");
  if (!inst.H.allFinite() || !inst.theta.allFinite() || !inst.mu.allFinite())
    throw Error(ErrorCode::InvalidMatrix, "bang: non-finite input");
  if ((inst.H - inst.H.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw Error(ErrorCode::NotSymmetric, "bang: H must be symmetric");
  if ((inst.H.diagonal().array() - 1.0).abs().maxCoeff() > 1e-8)
    throw Error(ErrorCode::InvalidMatrix, "bang: H must have unit diagonal");
  if (inst.theta.minCoeff() < 0.0)
    throw Error(ErrorCode::InvalidMatrix, "bang: theta must be non-negative");
}

void validate_signs(const BangInstance& inst, const SignVector& eps) {
  if (eps.signs.size() != inst.H.rows())
    throw Error(ErrorCode::InvalidDimension, "bang: sign vector size mismatch");
  for (Index j = 0; j < eps.signs.size(); ++j)
    if (eps.signs[j] != 1 && eps.signs[j] != -1)
      throw Error(ErrorCode::InvalidMatrix, "bang: signs must be exactly -1 or +1");
}

struct SearchOutcome {
  bool feasible = false;
  SignVector signs;
  long flips = 0;
  std::vector<double> history;
  std::vector<Index> violations;
};

SearchOutcome run_flips(const BangInstance& inst, Eigen::VectorXi eps, long max_flips,
                        bool track_objective) {
  const Index n = inst.H.rows();
  Vector s(n);
  for (Index j = 0; j < n; ++j) s[j] = eps[j] * inst.theta[j];
  Vector S = inst.H * s;  // running row sums sum_j h_ij eps_j theta_j

  SearchOutcome out;
  if (track_objective) out.history.push_back(bang_objective(inst, SignVector{eps}));

  for (;;) {
    // Pick the violated row with the largest objective gain.
    Index best_k = -1;
    double best_gain = 0.0;
    for (Index k = 0; k < n; ++k) {
      const double th = inst.theta[k];
      if (th <= 0.0) continue;  // vacuous margin
      const double margin = S[k] - inst.mu[k];
      if (std::abs(margin) >= th - kBangSlack) continue;
      const double gain = 4.0 * th * th - 4.0 * s[k] * margin;
      if (best_k < 0 || gain > best_gain) {
        best_k = k;
        best_gain = gain;
      }
    }
    if (best_k < 0) {
      out.feasible = true;
      out.signs.signs = std::move(eps);
      return out;
    }
    if (out.flips >= max_flips) {
      out.signs.signs = std::move(eps);
      for (Index k = 0; k < n; ++k)
        if (inst.theta[k] > 0.0 && std::abs(S[k] - inst.mu[k]) < inst.theta[k] - kBangSlack)
          out.violations.push_back(k);
      return out;
    }

    eps[best_k] = -eps[best_k];
    const double ds = 2.0 * eps[best_k] * inst.theta[best_k];
    S += ds * inst.H.col(best_k);
    s[best_k] = -s[best_k];
    ++out.flips;
    if (track_objective) out.history.push_back(bang_objective(inst, SignVector{eps}));
  }
}

BangResult finish_or_throw(const BangInstance& inst, SearchOutcome&& out, long max_flips,
                           int restarts, std::uint64_t seed, bool track_objective) {
  long total_flips = out.flips;
  for (int attempt = 0; attempt < restarts && !out.feasible; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt) + 1);
    Eigen::VectorXi eps(inst.H.rows());
    for (Index j = 0; j < eps.size(); ++j) eps[j] = (rng() & 1u) ? 1 : -1;
    out = run_flips(inst, std::move(eps), max_flips, track_objective);
    total_flips += out.flips;
  }
  if (!out.feasible)
    throw FlipBudgetError(std::move(out.signs), std::move(out.violations),
                          "bang: flip budget of " + std::to_string(max_flips) + " exhausted");
  BangResult res;
  res.signs = std::move(out.signs);
  res.flips = total_flips;
  res.objective_history = std::move(out.history);
  return res;
}

}  // namespace

double bang_objective(const BangInstance& inst, const SignVector& eps) {
  validate_signs(inst, eps);
  const Index n = inst.H.rows();
  Vector s(n);
  for (Index j = 0; j < n; ++j) s[j] = eps.signs[j] * inst.theta[j];
  return s.dot(inst.H * s) - 2.0 * s.dot(inst.mu);
}

BangResult bang_signs(const BangInstance& inst, long max_flips, bool track_objective, int restarts,
                      std::uint64_t seed) {
  validate_instance(inst);
  if (max_flips < 1) throw Error(ErrorCode::InvalidDimension, "bang: max_flips must be >= 1");
  SearchOutcome out =
      run_flips(inst, Eigen::VectorXi::Ones(inst.H.rows()), max_flips, track_objective);
  return finish_or_throw(inst, std::move(out), max_flips, restarts, seed, track_objective);
}

BangResult bang_signs_from(const BangInstance& inst, const SignVector& initial, long max_flips,
                           bool track_objective) {
  validate_instance(inst);
  validate_signs(inst, initial);
  if (max_flips < 1) throw Error(ErrorCode::InvalidDimension, "bang: max_flips must be >= 1");
  SearchOutcome out = run_flips(inst, initial.signs, max_flips, track_objective);
  return finish_or_throw(inst, std::move(out), max_flips, 0, 0, track_objective);
}

CounterexampleReport reject_asymmetric_counterexample() {
  CounterexampleReport report;
  report.instance.H.resize(2, 2);
  report.instance.H << 1, 1, -1, 1;
  report.instance.theta = Vector::Constant(2, 1.0);
  report.instance.mu = Vector::Zero(2);

  for (int mask = 0; mask < 4; ++mask) {
    CounterexampleCase c;
    c.signs.signs.resize(2);
    c.signs.signs[0] = (mask & 2) ? -1 : 1;
    c.signs.signs[1] = (mask & 1) ? -1 : 1;
    Vector s(2);
    s[0] = c.signs.signs[0] * report.instance.theta[0];
    s[1] = c.signs.signs[1] * report.instance.theta[1];
    c.row_values = report.instance.H * s - report.instance.mu;
    c.feasible = true;
    for (Index i = 0; i < 2; ++i)
      if (std::abs(c.row_values[i]) < report.instance.theta[i]) c.feasible = false;
    report.any_feasible = report.any_feasible || c.feasible;
    report.cases.push_back(std::move(c));
  }
  return report;
}

}  // namespace plank
