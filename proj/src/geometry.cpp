#include "itp/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace itp {

namespace {

Eigen::Vector2d rot90(const Eigen::Vector2d& v) { return {-v.y(), v.x()}; }

bool point_in_polygon(const std::vector<Eigen::Vector2d>& poly, const Eigen::Vector2d& p,
                      double tol) {
  // even-odd rule, with a tolerance band around the polyline
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = poly[j];
    const auto& b = poly[i];
    if ((b.y() > p.y()) != (a.y() > p.y())) {
      const double xint = b.x() + (p.y() - b.y()) * (a.x() - b.x()) / (a.y() - b.y());
      if (p.x() < xint) inside = !inside;
    }
    // distance to segment ab
    const Eigen::Vector2d d = a - b;
    const double dd = d.squaredNorm();
    double u = dd > 0 ? (p - b).dot(d) / dd : 0.0;
    u = std::clamp(u, 0.0, 1.0);
    if ((b + u * d - p).norm() <= tol) return true;
  }
  return inside;
}

}  // namespace

DomainGeometry DomainGeometry::disk(double radius) {
  if (!(radius > 0)) throw std::invalid_argument("disk radius must be positive");
  DomainGeometry g;
  g.kind_ = GeometryKind::Disk;
  g.dim_ = 2;
  g.radius_ = radius;
  return g;
}

DomainGeometry DomainGeometry::annulus(double r_in, double r_out) {
  if (!(r_in > 0) || !(r_out > 0)) throw std::invalid_argument("annulus radii must be positive");
  if (!(r_in < r_out)) throw std::invalid_argument("annulus requires r_in < r_out");
  DomainGeometry g;
  g.kind_ = GeometryKind::Annulus;
  g.dim_ = 2;
  g.r_in_ = r_in;
  g.r_out_ = r_out;
  return g;
}

DomainGeometry DomainGeometry::cube(double side) {
  if (!(side > 0)) throw std::invalid_argument("cube side must be positive");
  DomainGeometry g;
  g.kind_ = GeometryKind::Cube;
  g.dim_ = 3;
  g.side_ = side;
  return g;
}

DomainGeometry DomainGeometry::parametrized2d(Curve2d curve) {
  if (!curve.point || !curve.derivative)
    throw std::invalid_argument("parametrized2d needs point and derivative maps");
  DomainGeometry g;
  g.kind_ = GeometryKind::Parametrized2d;
  g.dim_ = 2;
  const int n = 720;
  g.polygon_.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * i / n;
    if (curve.derivative(t).norm() < 1e-12)
      throw std::invalid_argument("parametrized2d curve has a degenerate tangent");
    g.polygon_.push_back(curve.point(t));
  }
  g.curve_ = std::move(curve);
  return g;
}

bool DomainGeometry::contains(const Vec& x, double tol) const {
  if (x.size() != dim_) return false;
  switch (kind_) {
    case GeometryKind::Disk:
      return x.norm() <= radius_ + tol;
    case GeometryKind::Annulus: {
      const double r = x.norm();
      return r >= r_in_ - tol && r <= r_out_ + tol;
    }
    case GeometryKind::Cube:
      for (int i = 0; i < 3; ++i)
        if (x[i] < -tol || x[i] > side_ + tol) return false;
      return true;
    case GeometryKind::Parametrized2d:
      return point_in_polygon(polygon_, Eigen::Vector2d(x[0], x[1]), std::max(tol, 1e-9));
  }
  return false;
}

BoundaryParam BoundaryParam::curve(double t) {
  BoundaryParam p;
  p.t = t;
  return p;
}

BoundaryParam BoundaryParam::cube(const FacePoint& fp) {
  BoundaryParam p;
  p.on_face = true;
  p.face = fp;
  return p;
}

namespace {

BoundaryFrame frame2d(const Eigen::Vector2d& point, const Eigen::Vector2d& normal) {
  BoundaryFrame f;
  f.point = point;
  f.normal = normal;
  const Eigen::Vector2d tan = rot90(normal);
  f.tangents = Mat(1, 2);
  f.tangents.row(0) = tan;
  f.transfer = Mat(2, 2);
  f.transfer.row(0) = tan;
  f.transfer.row(1) = normal;
  return f;
}

}  // namespace

BoundaryFrame boundary_frame(const DomainGeometry& g, double t) {
  switch (g.kind()) {
    case GeometryKind::Disk: {
      const Eigen::Vector2d nrm(std::cos(t), std::sin(t));
      return frame2d(g.radius() * nrm, nrm);
    }
    case GeometryKind::Annulus: {
      if (t < 2.0 * kPi) {
        const Eigen::Vector2d nrm(std::cos(t), std::sin(t));
        return frame2d(g.outer_radius() * nrm, nrm);
      }
      const double th = t - 2.0 * kPi;
      const Eigen::Vector2d e(std::cos(th), std::sin(th));
      return frame2d(g.inner_radius() * e, -e);
    }
    case GeometryKind::Parametrized2d: {
      const Eigen::Vector2d d = g.curve().derivative(t);
      const double len = d.norm();
      if (len < 1e-12) throw std::invalid_argument("degenerate tangent on curve");
      const Eigen::Vector2d tan = d / len;
      // outward normal of a counterclockwise curve: tangent rotated by -90 deg
      const Eigen::Vector2d nrm(tan.y(), -tan.x());
      return frame2d(g.curve().point(t), nrm);
    }
    case GeometryKind::Cube:
      throw std::invalid_argument("cube boundary points need a face parameter");
  }
  throw std::logic_error("unreachable");
}

BoundaryFrame boundary_frame(const DomainGeometry& g, const FacePoint& fp) {
  if (g.kind() != GeometryKind::Cube)
    throw std::invalid_argument("face parameters apply to cube geometry only");
  if (fp.face < 0 || fp.face >= 6) throw std::invalid_argument("cube face id out of range");
  const double s = g.side();
  const double edge_tol = 1e-12 * (1.0 + s);
  if (fp.u <= edge_tol || fp.u >= s - edge_tol || fp.v <= edge_tol || fp.v >= s - edge_tol)
    throw std::invalid_argument("frame undefined at nonsmooth boundary point");
  const int axis = fp.face / 2;
  const bool positive = (fp.face % 2) == 0;
  const int ta = (axis + 1) % 3;
  const int tb = (axis + 2) % 3;

  BoundaryFrame f;
  f.point = Vec::Zero(3);
  f.point[axis] = positive ? s : 0.0;
  f.point[ta] = fp.u;
  f.point[tb] = fp.v;
  f.normal = Vec::Zero(3);
  f.normal[axis] = positive ? 1.0 : -1.0;
  f.tangents = Mat::Zero(2, 3);
  f.tangents(0, ta) = 1.0;
  f.tangents(1, tb) = 1.0;
  f.transfer = Mat::Zero(3, 3);
  f.transfer.row(0) = f.tangents.row(0);
  f.transfer.row(1) = f.tangents.row(1);
  f.transfer.row(2) = f.normal;
  return f;
}

BoundaryFrame boundary_frame(const DomainGeometry& g, const BoundaryParam& p) {
  return p.on_face ? boundary_frame(g, p.face) : boundary_frame(g, p.t);
}

GridResolution GridResolution::scaled(const DomainGeometry& g, int n) {
  if (n < 2) throw std::invalid_argument("resolution must be >= 2");
  GridResolution r;
  if (g.dimension() == 2) {
    r.interior_per_axis = n;
    r.boundary_count = 15 * n;
    r.direction_count = 3 * n;
  } else {
    r.interior_per_axis = std::max(2, n / 3);
    r.face_per_axis = std::max(2, n / 4);
    r.direction_count = 20 * n;
  }
  return r;
}

SampleGrid sample(const DomainGeometry& g, const GridResolution& res) {
  const int d = g.dimension();
  if (res.interior_per_axis < 2 || res.direction_count < 2 ||
      (d == 2 && res.boundary_count < 2) || (d == 3 && res.face_per_axis < 2))
    throw std::invalid_argument("sample: resolution must be >= 2 per axis");

  SampleGrid grid;

  // boundary parameters
  if (g.kind() == GeometryKind::Cube) {
    const double s = g.side();
    for (int face = 0; face < 6; ++face)
      for (int i = 0; i < res.face_per_axis; ++i)
        for (int j = 0; j < res.face_per_axis; ++j) {
          FacePoint fp;
          fp.face = face;
          fp.u = s * (i + 1) / (res.face_per_axis + 1);
          fp.v = s * (j + 1) / (res.face_per_axis + 1);
          grid.boundary.push_back(BoundaryParam::cube(fp));
        }
  } else {
    const int n = res.boundary_count;
    for (int j = 0; j < n; ++j) grid.boundary.push_back(BoundaryParam::curve(2.0 * kPi * j / n));
    if (g.kind() == GeometryKind::Annulus)
      for (int j = 0; j < n; ++j)
        grid.boundary.push_back(BoundaryParam::curve(2.0 * kPi + 2.0 * kPi * j / n));
  }

  // interior tensor grid clipped to the closure
  Vec lo(d), hi(d);
  switch (g.kind()) {
    case GeometryKind::Disk:
      lo.setConstant(-g.radius());
      hi.setConstant(g.radius());
      break;
    case GeometryKind::Annulus:
      lo.setConstant(-g.outer_radius());
      hi.setConstant(g.outer_radius());
      break;
    case GeometryKind::Cube:
      lo.setConstant(0.0);
      hi.setConstant(g.side());
      break;
    case GeometryKind::Parametrized2d: {
      Eigen::Vector2d mn(1e300, 1e300), mx(-1e300, -1e300);
      for (int i = 0; i < 256; ++i) {
        const auto p = g.curve().point(2.0 * kPi * i / 256);
        mn = mn.cwiseMin(p);
        mx = mx.cwiseMax(p);
      }
      lo = mn;
      hi = mx;
      break;
    }
  }
  const int n = res.interior_per_axis;
  std::vector<int> idx(d, 0);
  while (true) {
    Vec x(d);
    for (int a = 0; a < d; ++a) x[a] = lo[a] + (hi[a] - lo[a]) * idx[a] / (n - 1);
    if (g.contains(x)) grid.interior.push_back(x);
    int a = 0;
    for (; a < d; ++a) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
    if (a == d) break;
  }
  // the closure includes the boundary; add those points too
  for (const auto& bp : grid.boundary) grid.interior.push_back(boundary_frame(g, bp).point);

  // directions
  if (d == 2) {
    for (int j = 0; j < res.direction_count; ++j) {
      const double th = kPi * j / res.direction_count;  // antipodes omitted: forms are even
      Vec e(2);
      e << std::cos(th), std::sin(th);
      grid.directions.push_back(e);
    }
  } else {
    const int m = res.direction_count;
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < m; ++j) {
      const double z = 1.0 - 2.0 * (j + 0.5) / m;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double ph = golden * j;
      Vec e(3);
      e << rho * std::cos(ph), rho * std::sin(ph), z;
      grid.directions.push_back(e);
    }
  }
  return grid;
}

}  // namespace itp
