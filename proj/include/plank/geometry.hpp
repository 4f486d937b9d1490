#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/LU>

#include "plank/symmetrize.hpp"
#include "plank/types.hpp"

namespace plank {

/// A symmetric convex body: an lp ball (p in [1, inf]) or an invertible linear
/// image of one.  Nested linear images compose into a single map.
class Body {
 public:
  static Body lp_ball(double p, Index dim);
  static Body linear_image(const Body& base, const Matrix& map);

  double p() const noexcept { return p_; }
  Index dim() const noexcept { return dim_; }
  bool has_map() const noexcept { return map_.has_value(); }
  const Matrix& map() const { return *map_; }

  /// Solves map * y = x (identity map if none).
  Vector pull_back(const Vector& x) const;
  Vector push_forward(const Vector& y) const;

 private:
  Body(double p, Index dim) : p_(p), dim_(dim) {}

  double p_;
  Index dim_;
  std::optional<Matrix> map_;
  std::optional<Eigen::PartialPivLU<Matrix>> lu_;
};

struct Hyperplane {
  Vector normal;  // not all zero
  double offset = 0.0;  // the set {x : <normal, x> = offset}
};

struct HomothetResult {
  Vector center;
  double ratio = 0.0;  // 1/(n+1) for n hyperplanes
  Vector margins;      // |<phi_i, center> - m_i| in unit-dual-norm scale
  double body_norm_of_center = 0.0;
  Vector lambda;       // coefficients over the norming points
  int iterations = 0;  // scaling iterations of the inner solve
  long flips = 0;
};

/// Minkowski gauge of the body: the norm whose unit ball it is.
double gauge(const Body& body, const Vector& x);

/// Norm of a linear functional in the dual of the body's norm.
double dual_norm(const Body& body, const Vector& phi);

/// For phi with dual_norm(phi) = 1, a point x with gauge(x) = 1 and
/// <phi, x> = 1.  Ties are broken deterministically (lowest index; zero
/// coordinates of an l1-dual functional map to +1).
Vector norming_point(const Body& body, const Vector& phi);

/// Dual companion of norming_point: for x with gauge(x) = 1, a functional phi
/// with dual_norm(phi) = 1 and <phi, x> = 1.
Vector norming_functional(const Body& body, const Vector& x);

/// Normalized hyperplane data: row i of `functionals` has unit dual norm and
/// offsets[i] is the matching level, so plane i is {x : <phi_i, x> = m_i}.
struct NormalizedPlanes {
  Matrix functionals;  // n x d, rows phi_i
  Vector offsets;
};

NormalizedPlanes normalize_hyperplanes(const Body& body, const std::vector<Hyperplane>& planes);

/// Given n hyperplanes, constructs a center x with gauge(x) <= n/(n+1) whose
/// distance to every normalized plane level is at least 1/(n+1): the homothet
/// x + body/(n+1) sits inside the body and its interior misses every plane.
HomothetResult solve_homothet(const Body& body, const std::vector<Hyperplane>& planes,
                              const ScalingConfig& config = {}, long max_flips = 1'000'000);

/// Cube [-1,1]^d with n parallel hyperplanes normal to e_1 at offsets
/// -1 + 2k/(n+1); the largest avoiding homothet has ratio exactly 1/(n+1).
std::pair<Body, std::vector<Hyperplane>> sharpness_instance(int n, int d);

/// (2^-n, 1/(n+1)): the classical cube pigeonhole factor after n hyperplane
/// cuts versus the factor achieved here.
std::pair<double, double> davenport_comparison(int n);

}  // namespace plank
