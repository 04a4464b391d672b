#ifndef ITP_GEOMETRY_HPP
#define ITP_GEOMETRY_HPP

#include <functional>
#include <vector>

#include "itp/types.hpp"

namespace itp {

enum class GeometryKind { Disk, Annulus, Cube, Parametrized2d };

/// Boundary curve for Parametrized2d, parametrized counterclockwise
/// over t in [0, 2*pi).  The derivative must not vanish.
struct Curve2d {
  std::function<Eigen::Vector2d(double)> point;
  std::function<Eigen::Vector2d(double)> derivative;
};

class DomainGeometry {
 public:
  static DomainGeometry disk(double radius);
  static DomainGeometry annulus(double r_in, double r_out);
  static DomainGeometry cube(double side);
  static DomainGeometry parametrized2d(Curve2d curve);

  GeometryKind kind() const { return kind_; }
  int dimension() const { return dim_; }
  double radius() const { return radius_; }
  double inner_radius() const { return r_in_; }
  double outer_radius() const { return r_out_; }
  double side() const { return side_; }
  const Curve2d& curve() const { return curve_; }

  /// Closure membership with tolerance.
  bool contains(const Vec& x, double tol = 1e-12) const;

 private:
  DomainGeometry() = default;
  GeometryKind kind_ = GeometryKind::Disk;
  int dim_ = 2;
  double radius_ = 1.0, r_in_ = 0.0, r_out_ = 0.0, side_ = 0.0;
  Curve2d curve_;
  std::vector<Eigen::Vector2d> polygon_;  // sampled curve for membership tests
};

/// Local orthonormal frame at a boundary point.  transfer has the tangent
/// vectors as its first d-1 rows and the outward normal as the last row,
/// so y = transfer * (x - point) puts the normal along the last axis.
struct BoundaryFrame {
  Vec point;
  Vec normal;
  Mat tangents;  // (d-1) x d, one tangent per row
  Mat transfer;  // d x d orthogonal
  int dimension() const { return static_cast<int>(point.size()); }
};

/// A point on an open cube face: face in [0,6) = {+x1,-x1,+x2,-x2,+x3,-x3},
/// (u, v) in-face coordinates along the two tangent axes, strictly inside.
struct FacePoint {
  int face = 0;
  double u = 0.0;
  double v = 0.0;
};

struct BoundaryParam {
  bool on_face = false;
  double t = 0.0;
  FacePoint face;
  static BoundaryParam curve(double t);
  static BoundaryParam cube(const FacePoint& fp);
};

// Frames.  For the disk of radius R at angle t: normal (cos t, sin t),
// tangent (-sin t, cos t).  Annulus parameters: t in [0, 2pi) outer circle,
// t in [2pi, 4pi) inner circle (outward normal points into the hole).
// Cube frames exist on open faces only; edge or corner points are an error.
BoundaryFrame boundary_frame(const DomainGeometry& g, double t);
BoundaryFrame boundary_frame(const DomainGeometry& g, const FacePoint& fp);
BoundaryFrame boundary_frame(const DomainGeometry& g, const BoundaryParam& p);

struct GridResolution {
  int interior_per_axis = 24;
  int boundary_count = 360;  // per boundary circle (2d kinds)
  int face_per_axis = 6;     // cube faces
  int direction_count = 72;  // d=2 half-circle angles; d=3 Fibonacci points

  /// One-knob density used by the CLI --resolution flag.
  static GridResolution scaled(const DomainGeometry& g, int n);
};

struct SampleGrid {
  std::vector<Vec> interior;           // points in the domain closure
  std::vector<BoundaryParam> boundary;
  std::vector<Vec> directions;         // unit vectors
};

/// Deterministic sampling: tensor grid clipped to the closure (boundary
/// points appended), uniform boundary parameters, uniform directions
/// (angles j*pi/N for d=2 since the forms are even; Fibonacci sphere for
/// d=3).  Every resolution component must be >= 2.
SampleGrid sample(const DomainGeometry& g, const GridResolution& res);

}  // namespace itp

#endif
