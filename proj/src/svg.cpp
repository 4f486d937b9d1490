#include "plank/svg.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace plank {

namespace {

constexpr int kScreen = 640;

struct Frame {
  double ext = 1.0;    // world half-extent shown
  double scale = 1.0;  // world -> pixels

  double px(double wx) const { return (wx + ext) * scale; }
  double py(double wy) const { return (ext - wy) * scale; }  // y up in world
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v + 0.0);  // normalize -0
  return buf;
}

// Boundary polygon of the body, exact corners for the polyhedral cases.
std::vector<Vector> boundary_points(const Body& body) {
  std::vector<Vector> pts;
  const double inf = std::numeric_limits<double>::infinity();
  auto corner = [&](double a, double b) {
    Vector v(2);
    v << a, b;
    return body.push_forward(v);
  };
  if (body.p() == inf) {
    pts = {corner(1, 1), corner(-1, 1), corner(-1, -1), corner(1, -1)};
  } else if (body.p() == 1.0) {
    pts = {corner(1, 0), corner(0, 1), corner(-1, 0), corner(0, -1)};
  } else {
    const int samples = 256;
    for (int k = 0; k < samples; ++k) {
      const double t = 2.0 * M_PI * k / samples;
      Vector dir(2);
      dir << std::cos(t), std::sin(t);
      pts.push_back(dir / gauge(body, dir));
    }
  }
  return pts;
}

void append_polygon(std::ostringstream& out, const Frame& f, const std::vector<Vector>& pts,
                    const Vector& center, double ratio, const std::string& style) {
  out << "<polygon points=\"";
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double x = center[0] + ratio * pts[k][0];
    const double y = center[1] + ratio * pts[k][1];
    if (k) out << ' ';
    out << fmt(f.px(x)) << ',' << fmt(f.py(y));
  }
  out << "\" " << style << "/>\n";
}

}  // namespace

std::string render_homothet_svg(const Body& body, const std::vector<Hyperplane>& planes,
                                const HomothetResult& res) {
  if (body.dim() != 2)
    throw Error(ErrorCode::InvalidDimension, "render_homothet_svg: body must be planar");

  Vector e0 = Vector::Zero(2), e1 = Vector::Zero(2);
  e0[0] = 1.0;
  e1[1] = 1.0;
  Frame f;
  f.ext = 1.15 * std::max(dual_norm(body, e0), dual_norm(body, e1));
  f.scale = kScreen / (2.0 * f.ext);

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kScreen
      << "\" height=\"" << kScreen << "\" viewBox=\"0 0 " << kScreen << ' ' << kScreen << "\">\n"
      << "<rect width=\"" << kScreen << "\" height=\"" << kScreen << "\" fill=\"#ffffff\"/>\n";

  const std::vector<Vector> pts = boundary_points(body);
  append_polygon(out, f, pts, Vector::Zero(2), 1.0,
                 "fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"");

  // Hyperplanes clipped by length: a segment through the closest point to the
  // origin, long enough to cross the frame.
  const double L = 3.0 * f.ext;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const Vector& nrm = planes[i].normal;
    const double nn = nrm.squaredNorm();
    const double ox = nrm[0] * planes[i].offset / nn;
    const double oy = nrm[1] * planes[i].offset / nn;
    const double len = std::sqrt(nn);
    const double dx = -nrm[1] / len, dy = nrm[0] / len;
    out << "<line x1=\"" << fmt(f.px(ox - L * dx)) << "\" y1=\"" << fmt(f.py(oy - L * dy))
        << "\" x2=\"" << fmt(f.px(ox + L * dx)) << "\" y2=\"" << fmt(f.py(oy + L * dy))
        << "\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
  }

  append_polygon(out, f, pts, res.center, res.ratio,
                 "fill=\"#2ca02c\" fill-opacity=\"0.35\" stroke=\"#2ca02c\" stroke-width=\"1.5\"");

  out << "<circle cx=\"" << fmt(f.px(res.center[0])) << "\" cy=\"" << fmt(f.py(res.center[1]))
      << "\" r=\"3\" fill=\"#2ca02c\"/>\n";

  // Margin annotations next to each hyperplane.
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const Vector& nrm = planes[i].normal;
    const double nn = nrm.squaredNorm();
    const double len = std::sqrt(nn);
    const double ax = nrm[0] * planes[i].offset / nn + 0.04 * f.ext * nrm[0] / len;
    const double ay = nrm[1] * planes[i].offset / nn + 0.04 * f.ext * nrm[1] / len;
    out << "<text x=\"" << fmt(f.px(ax)) << "\" y=\"" << fmt(f.py(ay))
        << "\" font-family=\"monospace\" font-size=\"12\" fill=\"#d62728\">m" << i << '='
        << fmt(res.margins[static_cast<Index>(i)]) << "</text>\n";
  }

  out << "<text x=\"10\" y=\"" << (kScreen - 12)
      << "\" font-family=\"monospace\" font-size=\"13\" fill=\"#333333\">ratio="
      << fmt(res.ratio) << " gauge(center)=" << fmt(res.body_norm_of_center) << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace plank
