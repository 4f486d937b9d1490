#include <doctest.h>

#include <cmath>
#include <variant>

#include "plank/io.hpp"
#include "test_support.hpp"

using namespace plank;
using nlohmann::json;

TEST_CASE("matrix instances parse with exact values") {
  const json j = json::parse(R"({
    "kind": "matrix",
    "A": [[1.0, 1.0], [0.5, 1.0]],
    "m": [0.25, -0.125],
    "w": [0.5, 0.5]
  })");
  const Instance inst = parse_instance(j);
  REQUIRE(std::holds_alternative<PlankSystem>(inst));
  const auto& sys = std::get<PlankSystem>(inst);
  CHECK(sys.A(1, 0) == 0.5);
  CHECK(sys.m[1] == -0.125);
  CHECK(sys.w.sum() == 1.0);
}

TEST_CASE("geometry instances parse bodies, maps and planes") {
  const json j = json::parse(R"({
    "kind": "geometry",
    "body": {"type": "lp", "p": "inf", "dim": 2},
    "map": [[2.0, 0.0], [0.0, 1.0]],
    "hyperplanes": [{"normal": [1.0, 0.0], "offset": 0.5}]
  })");
  const Instance inst = parse_instance(j);
  REQUIRE(std::holds_alternative<GeometryInstance>(inst));
  const auto& geo = std::get<GeometryInstance>(inst);
  CHECK(geo.body.p() == testing::kInfinity);
  CHECK(geo.body.dim() == 2);
  CHECK(geo.body.has_map());
  CHECK(geo.hyperplanes.size() == 1);
  CHECK(geo.hyperplanes[0].offset == 0.5);
}

TEST_CASE("solution JSON round-trips without losing precision") {
  Solution sol;
  sol.lambda = Vector(3);
  sol.lambda << 1.0 / 3.0, -0.1234567890123456789, 5e-17;
  sol.margins = Vector(3);
  sol.margins << 0.3333333333333333, 0.1, 0.2;
  sol.l1_norm = sol.lambda.lpNorm<1>();
  sol.l2sq_norm = sol.lambda.squaredNorm();
  sol.weighted_norm = 3.0 * sol.l2sq_norm;
  sol.certificate = CertificateKind::Replicated;
  sol.sheets = 48;

  const json j = json::parse(matrix_solution_to_json(sol).dump());
  const Solution back = parse_matrix_solution(j);
  for (Index i = 0; i < 3; ++i) {
    CHECK(back.lambda[i] == sol.lambda[i]);
    CHECK(back.margins[i] == sol.margins[i]);
  }
  CHECK(back.l1_norm == sol.l1_norm);
  CHECK(back.certificate == CertificateKind::Replicated);
  CHECK(back.sheets == 48);
}

TEST_CASE("homothet JSON round-trips") {
  HomothetResult res;
  res.center = Vector(2);
  res.center << -0.5, 0.125;
  res.ratio = 0.5;
  res.body_norm_of_center = 0.5;
  res.margins = Vector::Constant(1, 0.5);
  res.lambda = Vector::Constant(1, 0.5);
  const HomothetResult back = parse_homothet(json::parse(homothet_to_json(res).dump()));
  CHECK(back.center[0] == res.center[0]);
  CHECK(back.ratio == res.ratio);
  CHECK(back.margins[0] == res.margins[0]);
}

TEST_CASE("structural problems are parse errors") {
  const auto expect_parse_error = [](const char* text) {
    try {
      parse_instance(json::parse(text));
      FAIL_CHECK("expected ParseError for: ", text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
    }
  };
  expect_parse_error(R"({"A": [[1]], "m": [0], "w": [1]})");  // missing kind
  expect_parse_error(R"({"kind": "matrix", "m": [0], "w": [1]})");  // missing A
  expect_parse_error(R"({"kind": "matrix", "A": [[1], [2, 3]], "m": [0], "w": [1]})");  // ragged
  expect_parse_error(R"({"kind": "matrix", "A": [["x"]], "m": [0], "w": [1]})");  // non-number
  expect_parse_error(
      R"({"kind": "geometry", "body": {"type": "lp", "p": 0.5, "dim": 2},
          "hyperplanes": [{"normal": [1, 0], "offset": 0}]})");  // p below 1
  expect_parse_error(
      R"({"kind": "geometry", "body": {"type": "lp", "p": "infinity", "dim": 2},
          "hyperplanes": [{"normal": [1, 0], "offset": 0}]})");  // bad inf spelling
}

TEST_CASE("semantic violations carry their own codes") {
  const auto code_of = [](const char* text) {
    try {
      parse_instance(json::parse(text));
      return ErrorCode::ParseError;  // not expected to succeed in these cases
    } catch (const Error& e) {
      return e.code();
    }
  };
  CHECK(code_of(R"({"kind": "matrix", "A": [[2.0]], "m": [0], "w": [0.5]})") ==
        ErrorCode::InvalidMatrix);  // diagonal
  CHECK(code_of(R"({"kind": "matrix", "A": [[1, 0], [0, 1]], "m": [0, 0], "w": [0.7, 0.7]})") ==
        ErrorCode::InsufficientSlack);  // widths exceed 1
  CHECK(code_of(R"({"kind": "matrix", "A": [[1]], "m": [0], "w": [-0.5]})") ==
        ErrorCode::InvalidMatrix);  // non-positive width
  CHECK(code_of(
            R"({"kind": "geometry", "body": {"type": "lp", "p": 2, "dim": 2},
                "hyperplanes": [{"normal": [0.0, 0.0], "offset": 0}]})") ==
        ErrorCode::NullNormal);
  CHECK(code_of(
            R"({"kind": "geometry", "body": {"type": "lp", "p": 2, "dim": 2},
                "map": [[1, 1], [1, 1]],
                "hyperplanes": [{"normal": [1.0, 0.0], "offset": 0}]})") ==
        ErrorCode::InvalidBody);  // singular map
}
