#include "plank/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace plank {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::ParseError, field + ": " + why);
}

const json& get_field(const json& j, const std::string& key) {
  const auto it = j.find(key);
  if (it == j.end()) parse_fail(key, "missing field");
  return *it;
}

double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) parse_fail(field, "expected a number");
  return j.get<double>();
}

Vector parse_vector(const json& j, const std::string& field) {
  if (!j.is_array()) parse_fail(field, "expected an array of numbers");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Index>(i)] = get_number(j[i], field + "[" + std::to_string(i) + "]");
  return v;
}

Matrix parse_matrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) parse_fail(field, "expected a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) parse_fail(field, "rows must be non-empty arrays");
  Matrix M(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      parse_fail(field + "[" + std::to_string(r) + "]", "ragged or non-array row");
    for (std::size_t c = 0; c < cols; ++c)
      M(static_cast<Index>(r), static_cast<Index>(c)) =
          get_number(j[r][c], field + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return M;
}

json vector_to_json(const Vector& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json matrix_to_json(const Matrix& M) {
  json rows = json::array();
  for (Index r = 0; r < M.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

double parse_p(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    parse_fail("body.p", "string form must be \"inf\"");
  }
  const double p = get_number(j, "body.p");
  if (!(p >= 1.0)) parse_fail("body.p", "must lie in [1, inf]");
  return p;
}

PlankSystem parse_matrix_instance(const json& j) {
  PlankSystem sys;
  sys.A = parse_matrix(get_field(j, "A"), "A");
  sys.m = parse_vector(get_field(j, "m"), "m");
  sys.w = parse_vector(get_field(j, "w"), "w");

  const Index n = sys.A.rows();
  if (sys.A.cols() != n) throw Error(ErrorCode::InvalidMatrix, "A must be square");
  if (sys.m.size() != n || sys.w.size() != n)
    throw Error(ErrorCode::InvalidDimension, "m and w must have one entry per row of A");
  if ((sys.A.diagonal().array() - 1.0).abs().maxCoeff() > 1e-10)
    throw Error(ErrorCode::InvalidMatrix, "A must have unit diagonal");
  if (sys.w.minCoeff() <= 0.0)
    throw Error(ErrorCode::InvalidMatrix, "half-widths must be positive");
  if (sys.w.sum() > 1.0 + 1e-12)
    throw Error(ErrorCode::InsufficientSlack, "half-widths must sum to at most 1");
  return sys;
}

GeometryInstance parse_geometry_instance(const json& j) {
  const json& body_j = get_field(j, "body");
  const std::string type = get_field(body_j, "type").is_string()
                               ? get_field(body_j, "type").get<std::string>()
                               : "";
  if (type != "lp") parse_fail("body.type", "only \"lp\" bodies are supported");
  const double p = parse_p(get_field(body_j, "p"));
  const json& dim_j = get_field(body_j, "dim");
  if (!dim_j.is_number_integer() || dim_j.get<long>() < 1)
    parse_fail("body.dim", "expected a positive integer");

  Body body = Body::lp_ball(p, dim_j.get<Index>());
  if (j.contains("map")) body = Body::linear_image(body, parse_matrix(j["map"], "map"));

  const json& planes_j = get_field(j, "hyperplanes");
  if (!planes_j.is_array() || planes_j.empty())
    parse_fail("hyperplanes", "expected a non-empty array");

  GeometryInstance inst{std::move(body), {}};
  for (std::size_t i = 0; i < planes_j.size(); ++i) {
    const std::string field = "hyperplanes[" + std::to_string(i) + "]";
    Hyperplane hp;
    hp.normal = parse_vector(get_field(planes_j[i], "normal"), field + ".normal");
    hp.offset = get_number(get_field(planes_j[i], "offset"), field + ".offset");
    if (hp.normal.size() != inst.body.dim())
      throw Error(ErrorCode::InvalidDimension, field + ".normal: dimension mismatch with body");
    if (hp.normal.norm() < 1e-12)
      throw Error(ErrorCode::NullNormal, field + ".normal: all entries are (near) zero");
    inst.hyperplanes.push_back(std::move(hp));
  }
  return inst;
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

Instance parse_instance(const json& j) {
  const json& kind = get_field(j, "kind");
  if (!kind.is_string()) parse_fail("kind", "expected \"matrix\" or \"geometry\"");
  const std::string k = kind.get<std::string>();
  if (k == "matrix") return parse_matrix_instance(j);
  if (k == "geometry") return parse_geometry_instance(j);
  parse_fail("kind", "unknown kind \"" + k + "\"");
}

json matrix_solution_to_json(const Solution& sol) {
  json j;
  j["kind"] = "matrix";
  j["lambda"] = vector_to_json(sol.lambda);
  j["margins"] = vector_to_json(sol.margins);
  j["norms"] = {{"l1", sol.l1_norm}, {"l2sq", sol.l2sq_norm}, {"weighted", sol.weighted_norm}};
  json cert;
  cert["type"] = to_string(sol.certificate);
  if (sol.certificate == CertificateKind::Replicated) cert["sheets"] = sol.sheets;
  j["certificate"] = std::move(cert);
  j["meta"] = {{"iterations", sol.stats.iterations},
               {"residual", sol.stats.residual},
               {"flips", sol.stats.flips},
               {"system_size", sol.stats.system_size}};
  return j;
}

json homothet_to_json(const HomothetResult& res) {
  json j;
  j["kind"] = "geometry";
  j["center"] = vector_to_json(res.center);
  j["ratio"] = res.ratio;
  j["body_norm_of_center"] = res.body_norm_of_center;
  j["margins"] = vector_to_json(res.margins);
  j["lambda"] = vector_to_json(res.lambda);
  j["meta"] = {{"iterations", res.iterations}, {"flips", res.flips}};
  return j;
}

json symmetrization_to_json(const SymmetrizationResult& sym) {
  json j;
  j["theta"] = vector_to_json(sym.theta);
  j["U"] = matrix_to_json(sym.U);
  j["H"] = matrix_to_json(sym.H);
  j["iterations"] = sym.iterations;
  j["residual"] = sym.residual;
  j["nuclear_trace"] = sym.nuclear_trace;
  return j;
}

Solution parse_matrix_solution(const json& j) {
  if (get_field(j, "kind").get<std::string>() != "matrix")
    parse_fail("kind", "expected a matrix solution");
  Solution sol;
  sol.lambda = parse_vector(get_field(j, "lambda"), "lambda");
  sol.margins = parse_vector(get_field(j, "margins"), "margins");
  const json& norms = get_field(j, "norms");
  sol.l1_norm = get_number(get_field(norms, "l1"), "norms.l1");
  sol.l2sq_norm = get_number(get_field(norms, "l2sq"), "norms.l2sq");
  sol.weighted_norm = get_number(get_field(norms, "weighted"), "norms.weighted");
  const json& cert = get_field(j, "certificate");
  const std::string type = get_field(cert, "type").get<std::string>();
  if (type == "equal_width") {
    sol.certificate = CertificateKind::EqualWidth;
  } else if (type == "replicated") {
    sol.certificate = CertificateKind::Replicated;
    sol.sheets = cert.contains("sheets") ? cert["sheets"].get<int>() : 0;
  } else if (type == "direct_weighted") {
    sol.certificate = CertificateKind::DirectWeighted;
  } else {
    parse_fail("certificate.type", "unknown certificate \"" + type + "\"");
  }
  return sol;
}

HomothetResult parse_homothet(const json& j) {
  if (get_field(j, "kind").get<std::string>() != "geometry")
    parse_fail("kind", "expected a geometry solution");
  HomothetResult res;
  res.center = parse_vector(get_field(j, "center"), "center");
  res.ratio = get_number(get_field(j, "ratio"), "ratio");
  res.body_norm_of_center = get_number(get_field(j, "body_norm_of_center"), "body_norm_of_center");
  res.margins = parse_vector(get_field(j, "margins"), "margins");
  if (j.contains("lambda")) res.lambda = parse_vector(j["lambda"], "lambda");
  return res;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, path + ": cannot open for writing");
  out << contents;
}

}  // namespace plank
