#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "plank/bang.hpp"
#include "plank/verify.hpp"
#include "test_support.hpp"

using namespace plank;

namespace {

SignVector signs_of(std::initializer_list<int> values) {
  SignVector eps;
  eps.signs.resize(static_cast<Index>(values.size()));
  Index i = 0;
  for (int v : values) eps.signs[i++] = v;
  return eps;
}

BangInstance ones_instance() {
  BangInstance inst;
  inst.H = Matrix::Ones(2, 2);
  inst.theta = Vector::Ones(2);
  inst.mu = Vector::Zero(2);
  return inst;
}

bool feasible(const BangInstance& inst, const SignVector& eps) {
  const Vector margins = recompute_bang_margins(inst, eps);
  for (Index i = 0; i < inst.theta.size(); ++i) {
    if (inst.theta[i] <= 0.0) continue;
    if (std::abs(margins[i]) < inst.theta[i] - 1e-9) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("objective values on tiny instances") {
  BangInstance id;
  id.H = Matrix::Identity(2, 2);
  id.theta = Vector::Ones(2);
  id.mu = Vector::Zero(2);
  CHECK(bang_objective(id, signs_of({1, 1})) == doctest::Approx(2.0));
  CHECK(bang_objective(id, signs_of({-1, 1})) == doctest::Approx(2.0));

  const BangInstance ones = ones_instance();
  CHECK(bang_objective(ones, signs_of({1, 1})) == doctest::Approx(4.0));
  CHECK(bang_objective(ones, signs_of({1, -1})) == doctest::Approx(0.0));
}

TEST_CASE("identity instance accepts all-plus immediately") {
  BangInstance inst;
  inst.H = Matrix::Identity(4, 4);
  inst.theta = Vector::Ones(4);
  inst.mu = Vector::Zero(4);
  const BangResult res = bang_signs(inst);
  CHECK(res.flips == 0);
  CHECK((res.signs.signs.array() == 1).all());
  const Vector margins = recompute_bang_margins(inst, res.signs);
  for (Index i = 0; i < 4; ++i) CHECK(std::abs(margins[i]) == doctest::Approx(1.0));
}

TEST_CASE("rank-one all-ones instance is a global maximum at all-plus") {
  const BangInstance inst = ones_instance();
  const BangResult res = bang_signs(inst);
  CHECK(res.flips == 0);
  const Vector margins = recompute_bang_margins(inst, res.signs);
  CHECK(std::abs(margins[0]) == doctest::Approx(2.0));
  CHECK(std::abs(margins[1]) == doctest::Approx(2.0));
}

TEST_CASE("seeded 4x4 instance agrees with the exhaustive oracle") {
  std::mt19937_64 rng(11);
  BangInstance inst;
  inst.H = testing::random_psd_unit_diagonal(4, rng);
  inst.theta = Vector::Ones(4);
  inst.mu = Vector(4);
  inst.mu << 0.3, -0.7, 0.1, 0.9;
  const BangResult res = bang_signs(inst);
  CHECK(feasible(inst, res.signs));
  const auto oracle = exhaustive_signs(inst);
  REQUIRE(oracle.has_value());
  CHECK(feasible(inst, *oracle));
}

TEST_CASE("every flip strictly increases the objective") {
  std::mt19937_64 rng(909);
  for (int t = 0; t < 50; ++t) {
    const Index n = 2 + static_cast<Index>(rng() % 11);
    BangInstance inst;
    inst.H = testing::random_psd_unit_diagonal(n, rng);
    inst.theta = testing::random_vector(n, rng, 0.2, 2.0);
    if (t % 5 == 0) inst.theta[static_cast<Index>(rng() % n)] = 0.0;
    inst.mu = testing::random_vector(n, rng, -2.0, 2.0);

    const BangResult res = bang_signs(inst, 1'000'000, /*track_objective=*/true);
    REQUIRE(res.objective_history.size() == static_cast<std::size_t>(res.flips) + 1);
    for (std::size_t k = 1; k < res.objective_history.size(); ++k)
      CHECK(res.objective_history[k] > res.objective_history[k - 1]);
    CHECK(feasible(inst, res.signs));
  }
}

TEST_CASE("local search is feasible whenever the oracle finds any vector") {
  std::mt19937_64 rng(111);
  for (int t = 0; t < 100; ++t) {
    const Index n = 2 + static_cast<Index>(rng() % 11);
    BangInstance inst;
    inst.H = testing::random_psd_unit_diagonal(n, rng);
    inst.theta = testing::random_vector(n, rng, 0.0, 2.0);
    inst.mu = testing::random_vector(n, rng, -2.0, 2.0);

    const auto oracle = exhaustive_signs(inst);
    REQUIRE(oracle.has_value());  // symmetric unit diagonal: always solvable
    const BangResult res = bang_signs(inst);
    CHECK(feasible(inst, res.signs));
  }
}

TEST_CASE("permutation equivariance of feasibility") {
  std::mt19937_64 rng(222);
  for (int t = 0; t < 25; ++t) {
    const Index n = 3 + static_cast<Index>(rng() % 8);
    BangInstance inst;
    inst.H = testing::random_psd_unit_diagonal(n, rng);
    inst.theta = testing::random_vector(n, rng, 0.1, 2.0);
    inst.mu = testing::random_vector(n, rng, -1.5, 1.5);
    const BangResult res = bang_signs(inst);

    std::vector<Index> perm(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::shuffle(perm.begin(), perm.end(), rng);

    BangInstance permuted;
    permuted.H.resize(n, n);
    permuted.theta.resize(n);
    permuted.mu.resize(n);
    SignVector mapped;
    mapped.signs.resize(n);
    for (Index i = 0; i < n; ++i) {
      permuted.theta[i] = inst.theta[perm[static_cast<std::size_t>(i)]];
      permuted.mu[i] = inst.mu[perm[static_cast<std::size_t>(i)]];
      mapped.signs[i] = res.signs.signs[perm[static_cast<std::size_t>(i)]];
      for (Index j = 0; j < n; ++j)
        permuted.H(i, j) =
            inst.H(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    CHECK(feasible(permuted, mapped));
  }
}

TEST_CASE("rows with zero theta impose no constraint") {
  BangInstance inst;
  inst.H = Matrix::Identity(3, 3);
  inst.H(0, 1) = inst.H(1, 0) = 0.9;
  inst.theta = Vector::Zero(3);
  inst.theta[2] = 1.0;
  inst.mu = Vector::Zero(3);
  inst.mu[0] = 100.0;  // would be hopeless if theta_0 > 0
  const BangResult res = bang_signs(inst);
  CHECK(feasible(inst, res.signs));
}

TEST_CASE("asymmetric input is rejected") {
  BangInstance inst;
  inst.H.resize(2, 2);
  inst.H << 1, 1, -1, 1;
  inst.theta = Vector::Ones(2);
  inst.mu = Vector::Zero(2);
  try {
    bang_signs(inst);
    FAIL("expected NotSymmetric");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSymmetric);
  }
}

TEST_CASE("flip budget exhaustion carries the best iterate; restarts can recover") {
  BangInstance inst;
  inst.H = Matrix::Identity(2, 2);
  inst.theta = Vector::Ones(2);
  inst.mu = Vector::Constant(2, 1.5);  // all-plus needs two flips
  try {
    bang_signs(inst, /*max_flips=*/1);
    FAIL("expected FlipBudgetExceeded");
  } catch (const FlipBudgetError& e) {
    CHECK(e.code() == ErrorCode::FlipBudgetExceeded);
    CHECK(!e.violations().empty());
    CHECK(e.best().signs.size() == 2);
  }
  // With restarts enabled the seeded all-minus start succeeds at once.
  const BangResult res = bang_signs(inst, 1, false, /*restarts=*/8, /*seed=*/3);
  CHECK(feasible(inst, res.signs));
}

TEST_CASE("the asymmetric counterexample has no feasible sign vector") {
  const CounterexampleReport report = reject_asymmetric_counterexample();
  CHECK(report.cases.size() == 4);
  CHECK(!report.any_feasible);
  for (const auto& c : report.cases) CHECK(!c.feasible);

  // Spot-check the row values quoted for three of the four assignments.
  CHECK(report.cases[0].row_values[1] == doctest::Approx(0.0));   // (+1, +1): row 2
  CHECK(report.cases[1].row_values[0] == doctest::Approx(0.0));   // (+1, -1): row 1
  CHECK(report.cases[3].row_values[1] == doctest::Approx(0.0));   // (-1, -1): row 2
}
