#include <doctest.h>

#include <cmath>
#include <random>

#include "plank/geometry.hpp"
#include "plank/verify.hpp"
#include "test_support.hpp"

using namespace plank;
using plank::testing::kInfinity;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("gauge of lp balls and linear images") {
  const Body cube = Body::lp_ball(kInfinity, 2);
  CHECK(gauge(cube, vec2(1, -1)) == doctest::Approx(1.0));

  const Body cross = Body::lp_ball(1.0, 2);
  CHECK(gauge(cross, vec2(0.5, 0.5)) == doctest::Approx(1.0));

  Matrix T(2, 2);
  T << 2, 0, 0, 1;
  const Body ellipse = Body::linear_image(Body::lp_ball(2.0, 2), T);
  CHECK(gauge(ellipse, vec2(2, 0)) == doctest::Approx(1.0));
}

TEST_CASE("dual norms are the conjugate-exponent norms") {
  CHECK(dual_norm(Body::lp_ball(kInfinity, 2), vec2(0.5, 0.5)) == doctest::Approx(1.0));
  CHECK(dual_norm(Body::lp_ball(2.0, 2), vec2(3, 4)) == doctest::Approx(5.0));
  CHECK(dual_norm(Body::lp_ball(1.0, 2), vec2(2, -5)) == doctest::Approx(5.0));
}

TEST_CASE("norming points pair to one") {
  const Vector x_cube = norming_point(Body::lp_ball(kInfinity, 2), vec2(0.5, 0.5));
  CHECK(x_cube[0] == doctest::Approx(1.0));
  CHECK(x_cube[1] == doctest::Approx(1.0));

  const Vector x_cross = norming_point(Body::lp_ball(1.0, 2), vec2(1.0, 0.3));
  CHECK(x_cross[0] == doctest::Approx(1.0));
  CHECK(x_cross[1] == doctest::Approx(0.0));

  const Vector x_ball = norming_point(Body::lp_ball(2.0, 2), vec2(0.6, 0.8));
  CHECK(x_ball[0] == doctest::Approx(0.6));
  CHECK(x_ball[1] == doctest::Approx(0.8));

  try {
    norming_point(Body::lp_ball(2.0, 2), vec2(3.0, 4.0));
    FAIL("expected NotNormalized");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNormalized);
  }
}

TEST_CASE("duality across exponents: gauge and pairing are one") {
  std::mt19937_64 rng(606);
  const double ps[] = {1.0, 1.5, 2.0, 3.0, kInfinity};
  int checked = 0;
  for (int t = 0; t < 500; ++t) {
    const double p = ps[t % 5];
    const Index d = 2 + static_cast<Index>(rng() % 7);
    Body body = Body::lp_ball(p, d);
    if (t % 4 == 0) {
      Matrix T = testing::random_matrix(d, rng);
      T += 2.5 * Matrix::Identity(d, d);  // keep it invertible
      body = Body::linear_image(body, T);
    }
    Vector phi = testing::random_vector(d, rng, -1.0, 1.0);
    if (phi.cwiseAbs().maxCoeff() < 1e-3) phi[0] = 1.0;
    phi /= dual_norm(body, phi);

    const Vector x = norming_point(body, phi);
    CHECK(std::abs(gauge(body, x) - 1.0) <= 1e-9);
    CHECK(std::abs(phi.dot(x) - 1.0) <= 1e-9);

    // And the dual companion from a unit-gauge point.
    Vector y = testing::random_vector(d, rng, -1.0, 1.0);
    if (y.cwiseAbs().maxCoeff() < 1e-3) y[0] = 1.0;
    y /= gauge(body, y);
    const Vector psi = norming_functional(body, y);
    CHECK(std::abs(dual_norm(body, psi) - 1.0) <= 1e-9);
    CHECK(std::abs(psi.dot(y) - 1.0) <= 1e-9);
    ++checked;
  }
  CHECK(checked == 500);
}

TEST_CASE("Hoelder inequality on random pairs") {
  std::mt19937_64 rng(707);
  const double ps[] = {1.0, 1.5, 2.0, 3.0, kInfinity};
  for (int t = 0; t < 200; ++t) {
    const Index d = 2 + static_cast<Index>(rng() % 7);
    const Body body = Body::lp_ball(ps[t % 5], d);
    const Vector x = testing::random_vector(d, rng, -2.0, 2.0);
    const Vector phi = testing::random_vector(d, rng, -2.0, 2.0);
    CHECK(std::abs(phi.dot(x)) <= dual_norm(body, phi) * gauge(body, x) + 1e-9);
  }
}

TEST_CASE("one hyperplane through a square forces the half-scale homothet") {
  const Body cube = Body::lp_ball(kInfinity, 2);
  Hyperplane hp{vec2(1, 0), 0.0};
  const HomothetResult res = solve_homothet(cube, {hp});
  CHECK(res.ratio == doctest::Approx(0.5));
  // margin >= 1/2 and gauge <= 1/2 force |x_0| = 1/2 exactly.
  CHECK(std::abs(std::abs(res.center[0]) - 0.5) <= 1e-9);
  CHECK(res.body_norm_of_center <= 0.5 + 1e-9);
  CHECK(check_homothet(cube, {hp}, res, 1e-9).feasible);
}

TEST_CASE("one-dimensional enumeration: two symmetric cuts") {
  const Body segment = Body::lp_ball(kInfinity, 1);
  Vector normal(1);
  normal << 1.0;
  std::vector<Hyperplane> planes{{normal, 1.0 / 3.0}, {normal, -1.0 / 3.0}};
  const HomothetResult res = solve_homothet(segment, planes);
  CHECK(res.ratio == doctest::Approx(1.0 / 3.0));
  // Feasible centers are exactly {-2/3, 0, 2/3}.
  const double x = res.center[0];
  const double nearest =
      std::min({std::abs(x - 2.0 / 3.0), std::abs(x), std::abs(x + 2.0 / 3.0)});
  CHECK(nearest <= 1e-9);
  CHECK(check_homothet(segment, planes, res, 1e-9).feasible);
}

TEST_CASE("seeded Euclidean instance verified independently") {
  std::mt19937_64 rng(41);
  const Body ball = Body::lp_ball(2.0, 3);
  std::vector<Hyperplane> planes;
  for (int i = 0; i < 5; ++i) {
    Vector nrm = testing::random_vector(3, rng, -1.0, 1.0);
    if (nrm.norm() < 1e-3) nrm[0] = 1.0;
    planes.push_back({nrm, testing::random_vector(1, rng, -1.0, 1.0)[0]});
  }
  const HomothetResult res = solve_homothet(ball, planes);
  const VerificationReport report = check_homothet(ball, planes, res, 1e-9);
  CHECK(report.feasible);
  CHECK(res.body_norm_of_center <= 5.0 / 6.0 + 1e-9);
  CHECK(res.margins.minCoeff() >= 1.0 / 6.0 - 1e-9);
}

TEST_CASE("sharpness instances achieve exactly the guaranteed ratio") {
  for (int n = 2; n <= 4; ++n) {
    const auto [cube, planes] = sharpness_instance(n, 2);
    CHECK(planes.size() == static_cast<std::size_t>(n));
    const HomothetResult res = solve_homothet(cube, planes);
    const double ratio = 1.0 / (n + 1);
    CHECK(check_homothet(cube, planes, res, 1e-9).feasible);
    // The parallel-slab geometry caps the minimum margin at the ratio itself.
    CHECK(std::abs(res.margins.minCoeff() - ratio) <= 1e-6);
    // The grid oracle certifies nothing does better.
    CHECK(grid_search_2d(cube, planes, ratio + 1e-2, 1024) == std::nullopt);
    CHECK(grid_search_2d(cube, planes, ratio, 1024).has_value());
  }

  const auto [cube1, planes1] = sharpness_instance(1, 2);
  CHECK(planes1[0].offset == doctest::Approx(0.0));
  const auto [cube2, planes2] = sharpness_instance(2, 2);
  CHECK(planes2[0].offset == doctest::Approx(-1.0 / 3.0));
  CHECK(planes2[1].offset == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("affine invariance: transformed instances pull back") {
  std::mt19937_64 rng(51);
  const Body ball = Body::lp_ball(2.0, 2);
  std::vector<Hyperplane> planes;
  for (int i = 0; i < 3; ++i)
    planes.push_back({testing::random_vector(2, rng, -1.0, 1.0),
                      testing::random_vector(1, rng, -0.5, 0.5)[0]});

  Matrix T(2, 2);
  T << 1.5, 0.4, -0.3, 0.9;
  const Body image = Body::linear_image(ball, T);
  const Matrix Tinv_t = T.inverse().transpose();
  std::vector<Hyperplane> image_planes;
  for (const auto& hp : planes) image_planes.push_back({Tinv_t * hp.normal, hp.offset});

  const HomothetResult transformed = solve_homothet(image, image_planes);
  HomothetResult pulled = transformed;
  pulled.center = T.inverse() * transformed.center;
  pulled.margins = (normalize_hyperplanes(ball, planes).functionals * pulled.center -
                    normalize_hyperplanes(ball, planes).offsets)
                       .cwiseAbs();
  pulled.body_norm_of_center = gauge(ball, pulled.center);
  CHECK(check_homothet(ball, planes, pulled, 1e-8).feasible);
}

TEST_CASE("pigeonhole comparison values") {
  CHECK(davenport_comparison(0) == std::pair{1.0, 1.0});
  CHECK(davenport_comparison(1) == std::pair{0.5, 0.5});
  const auto [dav, ball] = davenport_comparison(5);
  CHECK(dav == doctest::Approx(0.03125));
  CHECK(ball == doctest::Approx(1.0 / 6.0));
  for (int n = 2; n <= 10; ++n) {
    const auto [d, b] = davenport_comparison(n);
    CHECK(b > d);
  }
}

TEST_CASE("body construction guards") {
  try {
    Body::lp_ball(0.5, 2);
    FAIL("expected InvalidBody");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidBody);
  }

  Matrix singular = Matrix::Zero(2, 2);
  singular(0, 0) = 1.0;
  try {
    Body::linear_image(Body::lp_ball(2.0, 2), singular);
    FAIL("expected InvalidBody");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidBody);
  }

  // Nested images compose into a single map.
  Matrix T1(2, 2), T2(2, 2);
  T1 << 2, 0, 0, 1;
  T2 << 1, 1, 0, 1;
  const Body nested = Body::linear_image(Body::linear_image(Body::lp_ball(2.0, 2), T1), T2);
  CHECK((nested.map() - T2 * T1).cwiseAbs().maxCoeff() <= 1e-15);
}
