#include "plank/geometry.hpp"

#include <cmath>
#include <limits>

#include "plank/solver.hpp"

namespace plank {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double conjugate_exponent(double p) {
  if (p == 1.0) return kInf;
  if (p == kInf) return 1.0;
  return p / (p - 1.0);
}

double lp_norm(double p, const Vector& x) {
  if (x.size() == 0) return 0.0;
  const double m = x.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  if (p == kInf) return m;
  if (p == 1.0) return x.cwiseAbs().sum();
  if (p == 2.0) return x.norm();
  return m * std::pow((x.cwiseAbs() / m).array().pow(p).sum(), 1.0 / p);
}

double sign_or_plus(double v) { return v < 0.0 ? -1.0 : 1.0; }

Index smallest_argmax_abs(const Vector& v) {
  Index best = 0;
  for (Index k = 1; k < v.size(); ++k)
    if (std::abs(v[k]) > std::abs(v[best])) best = k;
  return best;
}

Vector lp_norming_point(double p, const Vector& phi) {
  Vector x(phi.size());
  if (p == kInf) {
    for (Index k = 0; k < phi.size(); ++k) x[k] = sign_or_plus(phi[k]);
  } else if (p == 1.0) {
    x.setZero();
    const Index k = smallest_argmax_abs(phi);
    x[k] = sign_or_plus(phi[k]);
  } else {
    const double e = conjugate_exponent(p) - 1.0;
    for (Index k = 0; k < phi.size(); ++k)
      x[k] = sign_or_plus(phi[k]) * std::pow(std::abs(phi[k]), e);
  }
  return x;
}

Vector lp_norming_functional(double p, const Vector& x) {
  Vector phi(x.size());
  if (p == kInf) {
    phi.setZero();
    const Index k = smallest_argmax_abs(x);
    phi[k] = sign_or_plus(x[k]);
  } else if (p == 1.0) {
    for (Index k = 0; k < x.size(); ++k) phi[k] = sign_or_plus(x[k]);
  } else {
    for (Index k = 0; k < x.size(); ++k)
      phi[k] = sign_or_plus(x[k]) * std::pow(std::abs(x[k]), p - 1.0);
  }
  return phi;
}

void check_dim(const Body& body, const Vector& v, const char* op) {
  if (v.size() != body.dim())
    throw Error(ErrorCode::InvalidDimension, std::string(op) + ": vector dimension mismatch");
}

}  // namespace

Body Body::lp_ball(double p, Index dim) {
  if (dim < 1) throw Error(ErrorCode::InvalidDimension, "Body: dimension must be positive");
  if (!(p >= 1.0) || (std::isnan(p)))
    throw Error(ErrorCode::InvalidBody, "Body: p must lie in [1, inf]");
  return Body(p, dim);
}

Body Body::linear_image(const Body& base, const Matrix& map) {
  if (map.rows() != base.dim() || map.cols() != base.dim())
    throw Error(ErrorCode::InvalidDimension, "Body: map must be square of the body dimension");
  if (!map.allFinite()) throw Error(ErrorCode::InvalidMatrix, "Body: map has non-finite entries");

  Matrix combined = base.has_map() ? Matrix(map * base.map()) : map;
  Eigen::PartialPivLU<Matrix> lu(combined);
  if (std::abs(lu.determinant()) < 1e-12)
    throw Error(ErrorCode::InvalidBody, "Body: map is singular");

  Body body(base.p(), base.dim());
  body.map_ = std::move(combined);
  body.lu_ = std::move(lu);
  return body;
}

Vector Body::pull_back(const Vector& x) const { return lu_ ? lu_->solve(x) : x; }

Vector Body::push_forward(const Vector& y) const { return map_ ? Vector(*map_ * y) : y; }

double gauge(const Body& body, const Vector& x) {
  check_dim(body, x, "gauge");
  return lp_norm(body.p(), body.pull_back(x));
}

double dual_norm(const Body& body, const Vector& phi) {
  check_dim(body, phi, "dual_norm");
  const Vector base_phi = body.has_map() ? Vector(body.map().transpose() * phi) : phi;
  return lp_norm(conjugate_exponent(body.p()), base_phi);
}

Vector norming_point(const Body& body, const Vector& phi) {
  check_dim(body, phi, "norming_point");
  if (std::abs(dual_norm(body, phi) - 1.0) > 1e-6)
    throw Error(ErrorCode::NotNormalized, "norming_point: functional must have unit dual norm");
  const Vector base_phi = body.has_map() ? Vector(body.map().transpose() * phi) : phi;
  return body.push_forward(lp_norming_point(body.p(), base_phi));
}

Vector norming_functional(const Body& body, const Vector& x) {
  check_dim(body, x, "norming_functional");
  if (std::abs(gauge(body, x) - 1.0) > 1e-6)
    throw Error(ErrorCode::NotNormalized, "norming_functional: point must have unit gauge");
  const Vector psi = lp_norming_functional(body.p(), body.pull_back(x));
  if (!body.has_map()) return psi;
  // Functional on the image body: compose with the inverse map.
  return body.map().transpose().partialPivLu().solve(psi);
}

NormalizedPlanes normalize_hyperplanes(const Body& body, const std::vector<Hyperplane>& planes) {
  NormalizedPlanes out;
  out.functionals.resize(static_cast<Index>(planes.size()), body.dim());
  out.offsets.resize(static_cast<Index>(planes.size()));
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const Hyperplane& hp = planes[i];
    if (hp.normal.size() != body.dim())
      throw Error(ErrorCode::InvalidDimension, "hyperplane normal dimension mismatch");
    if (hp.normal.norm() < 1e-12)
      throw Error(ErrorCode::NullNormal, "hyperplane " + std::to_string(i) + " has null normal");
    const double s = dual_norm(body, hp.normal);
    out.functionals.row(static_cast<Index>(i)) = hp.normal / s;
    out.offsets[static_cast<Index>(i)] = hp.offset / s;
  }
  return out;
}

HomothetResult solve_homothet(const Body& body, const std::vector<Hyperplane>& planes,
                              const ScalingConfig& config, long max_flips) {
  if (planes.empty())
    throw Error(ErrorCode::InvalidDimension, "solve_homothet: need at least one hyperplane");
  const Index n = static_cast<Index>(planes.size());
  const NormalizedPlanes np = normalize_hyperplanes(body, planes);

  // Norming points and the pairing matrix a_ij = <phi_i, x_j>; unit diagonal
  // by construction.
  Matrix points(body.dim(), n);
  for (Index j = 0; j < n; ++j) points.col(j) = norming_point(body, np.functionals.row(j));
  Matrix A = np.functionals * points;

  const double blow_up = static_cast<double>(n + 1) / static_cast<double>(n);
  Solution sol = solve_equal_width(A, np.offsets * blow_up, config, max_flips);

  HomothetResult res;
  res.ratio = 1.0 / static_cast<double>(n + 1);
  res.center = (1.0 / blow_up) * (points * sol.lambda);
  res.margins = (np.functionals * res.center - np.offsets).cwiseAbs();
  res.body_norm_of_center = gauge(body, res.center);
  res.lambda = sol.lambda;
  res.iterations = sol.stats.iterations;
  res.flips = sol.stats.flips;
  return res;
}

std::pair<Body, std::vector<Hyperplane>> sharpness_instance(int n, int d) {
  if (n < 1 || d < 1)
    throw Error(ErrorCode::InvalidDimension, "sharpness_instance: n and d must be positive");
  Body cube = Body::lp_ball(kInf, d);
  std::vector<Hyperplane> planes;
  planes.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    Hyperplane hp;
    hp.normal = Vector::Zero(d);
    hp.normal[0] = 1.0;
    hp.offset = -1.0 + 2.0 * k / (n + 1.0);
    planes.push_back(std::move(hp));
  }
  return {std::move(cube), std::move(planes)};
}

std::pair<double, double> davenport_comparison(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidDimension, "davenport_comparison: n must be >= 0");
  return {std::pow(2.0, -n), 1.0 / (n + 1.0)};
}

}  // namespace plank
