#include <doctest.h>

#include <cmath>
#include <random>

#include "itp/parameter.hpp"

using namespace itp;

namespace {

CMat diag2(Complex a, Complex b) {
  CMat A = CMat::Zero(2, 2);
  A(0, 0) = a;
  A(1, 1) = b;
  return A;
}

CMat diag3(Complex a, Complex b, Complex c) {
  CMat A = CMat::Zero(3, 3);
  A(0, 0) = a;
  A(1, 1) = b;
  A(2, 2) = c;
  return A;
}

SampleGrid grid_for(const DomainGeometry& g) {
  GridResolution res;
  if (g.dimension() == 2) {
    res.interior_per_axis = 9;
    res.boundary_count = 48;
    res.direction_count = 24;
  } else {
    res.interior_per_axis = 4;
    res.face_per_axis = 3;
    res.direction_count = 160;
  }
  return sample(g, res);
}

}  // namespace

TEST_CASE("interior symbol values") {
  const DomainGeometry cube = DomainGeometry::cube(1.0);
  const CoefficientField f1 = CoefficientField::constant(cube, CMat::Identity(3, 3), 1.0);
  Vec x(3);
  x << 0.5, 0.5, 0.5;
  Vec s(3);
  s << 1, 0, 0;
  CHECK(std::abs(interior_symbol(f1, x, s, 0.0) - Complex(-1.0)) < 1e-14);
  Vec zero = Vec::Zero(3);
  const Complex k = std::polar(1.0, kPi / 4);
  CHECK(std::abs(interior_symbol(f1, x, zero, k) - Complex(0.0, 1.0)) < 1e-14);

  const CoefficientField f2 = CoefficientField::constant(cube, diag3(1, 2, 3), 2.0);
  Vec e2v(3);
  e2v << 0, 1, 0;
  CHECK(std::abs(interior_symbol(f2, x, e2v, 1.0)) < 1e-14);  // -2 + 2 = 0
}

TEST_CASE("condition I margins at reference rays") {
  const DomainGeometry disk = DomainGeometry::disk(1.0);
  const SampleGrid grid = grid_for(disk);
  const CoefficientField id = CoefficientField::constant(disk, CMat::Identity(2, 2), 1.0);

  const ConditionIMargin m45 = condition_i_margin(id, Ray(kPi / 4), grid);
  CHECK(m45.margin == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
  CHECK(m45.minimizer.u == doctest::Approx(0.5).epsilon(1e-9));

  const ConditionIMargin m0 = condition_i_margin(id, Ray(0.0), grid);
  CHECK(m0.margin < 1e-12);  // real ray degenerates

  const CoefficientField nzero = CoefficientField::constant(disk, CMat::Identity(2, 2), 0.0);
  const ConditionIMargin mz = condition_i_margin(nzero, Ray(kPi / 4), grid);
  CHECK(mz.margin < 1e-14);  // witness sigma = 0, rho = 1
  CHECK(mz.minimizer.u == doctest::Approx(0.0));
}

TEST_CASE("condition I homogeneity and slice consistency") {
  const DomainGeometry disk = DomainGeometry::disk(1.0);
  const CoefficientField ex2 =
      CoefficientField::example2(disk, 2.0, Complex(2.0, 0.0));
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  Vec x(2);
  x << 0.3, 0.2;
  for (int it = 0; it < 100; ++it) {
    Vec s(2);
    s << u(rng), u(rng) - 1.0;
    const Complex k = std::polar(u(rng), u(rng));
    const double scale = u(rng);
    const Complex lhs = interior_symbol(ex2, x, Vec(scale * s), scale * k);
    const Complex rhs = scale * scale * interior_symbol(ex2, x, s, k);
    CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
  }

  // slice margin vs normalized infimum over an unnormalized grid
  const SampleGrid grid = grid_for(disk);
  const Ray ray(kPi / 4);
  const double margin = condition_i_margin(ex2, ray, grid).margin;
  double inf = 1e300;
  for (const Vec& pt : {Vec(x)}) {
    for (const Vec& dir : grid.directions)
      for (double slen : {0.1, 0.4, 0.8, 1.3, 2.0})
        for (double rho : {0.05, 0.3, 0.7, 1.1, 1.9}) {
          const Complex k = std::polar(rho, ray.phi);
          const Complex P = interior_symbol(ex2, pt, Vec(slen * dir), k);
          inf = std::min(inf, std::abs(P) / (slen * slen + rho * rho));
        }
  }
  CHECK(margin <= inf * 1.05 + 1e-9);
}

TEST_CASE("condition II margins at reference configurations") {
  const DomainGeometry disk = DomainGeometry::disk(1.0);
  const SampleGrid dgrid = grid_for(disk);
  // A = I: det B = |tau|^2, the expression collapses at rho = 0
  const CoefficientField id = CoefficientField::constant(disk, CMat::Identity(2, 2), 1.0);
  for (double phi : {0.1, kPi / 4, 1.9})
    CHECK(condition_ii_margin(id, disk, Ray(phi), dgrid).margin < 1e-12);

  // cube diag(1,2,3): the face perpendicular to e3 gives sqrt(2) at phi=pi/4
  const DomainGeometry cube = DomainGeometry::cube(1.0);
  FacePoint fp;
  fp.face = 4;
  fp.u = 0.5;
  fp.v = 0.5;
  const BoundaryFrame top = boundary_frame(cube, fp);
  const RotatedCoefficients rot = rotate_to_frame(diag3(1, 2, 3), 1.0, top);
  CHECK(condition_ii_margin_at_frame(rot, Ray(kPi / 4)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

  // face perpendicular to e1 has a_dd = 1, so the margin collapses at tau=0
  fp.face = 0;
  const RotatedCoefficients rot1 =
      rotate_to_frame(diag3(1, 2, 3), 1.0, boundary_frame(cube, fp));
  CHECK(condition_ii_margin_at_frame(rot1, Ray(kPi / 4)) < 1e-12);

  // whole-cube margin is zero for every phi
  const CoefficientField f123 = CoefficientField::constant(cube, diag3(1, 2, 3), 1.0);
  const SampleGrid cgrid = grid_for(cube);
  CHECK(condition_ii_margin(f123, cube, Ray(kPi / 4), cgrid).margin < 1e-12);
}

TEST_CASE("condition II margin is invariant under tangent rotation") {
  std::mt19937 rng(17);
  std::normal_distribution<double> g(0.0, 1.0);
  const DomainGeometry cube = DomainGeometry::cube(1.0);
  FacePoint fp;
  fp.face = 2;
  fp.u = 0.4;
  fp.v = 0.6;
  const BoundaryFrame f = boundary_frame(cube, fp);
  for (int it = 0; it < 30; ++it) {
    Mat B(3, 3), N(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        B(i, j) = g(rng);
        N(i, j) = g(rng);
      }
    const CMat A = (B * B.transpose()).cast<Complex>() +
                   Complex(0, 0.4) * (N + N.transpose()).cast<Complex>() +
                   0.4 * CMat::Identity(3, 3);
    const double beta = 0.1 + 0.5 * it;
    BoundaryFrame r = f;
    r.tangents.row(0) = std::cos(beta) * f.tangents.row(0) + std::sin(beta) * f.tangents.row(1);
    r.tangents.row(1) = -std::sin(beta) * f.tangents.row(0) + std::cos(beta) * f.tangents.row(1);
    r.transfer.row(0) = r.tangents.row(0);
    r.transfer.row(1) = r.tangents.row(1);
    const Ray ray(0.7);
    const double m1 = condition_ii_margin_at_frame(rotate_to_frame(A, 1.5, f), ray);
    const double m2 = condition_ii_margin_at_frame(rotate_to_frame(A, 1.5, r), ray);
    CHECK(std::abs(m1 - m2) < 1e-8 * (1.0 + m1));
  }
}

TEST_CASE("ray scans over the Example-2 family") {
  const DomainGeometry disk = DomainGeometry::disk(1.0);
  const SampleGrid grid = grid_for(disk);

  // n = 1: the boundary normal-normal entry is 1, no ray is admissible
  const CoefficientField n1 = CoefficientField::example2(disk, 2.0, 1.0);
  const RayScanResult scan1 = ray_scan(n1, disk, 72, grid);
  CHECK(scan1.admissible.empty());

  // n = 2: rays near pi/4 are admissible
  const CoefficientField n2 = CoefficientField::example2(disk, 2.0, 2.0);
  const RayScanResult scan2 = ray_scan(n2, disk, 72, grid);
  CHECK(!scan2.admissible.empty());
  const RayMarginReport& best = scan2.reports[scan2.best_index];
  CHECK(std::min(best.condition_i, best.condition_ii) > 0.1);

  // identity matrix: admissible set empty for any n
  const CoefficientField id = CoefficientField::constant(disk, CMat::Identity(2, 2), 2.0);
  CHECK(ray_scan(id, disk, 36, grid).admissible.empty());

  // close rays to an admissible ray stay admissible
  const double phi_best = best.ray.phi;
  const double delta = std::min(best.condition_i, best.condition_ii) / 10.0;
  for (double s : {-1.0, 1.0}) {
    const Ray nearby(phi_best + s * delta);
    CHECK(condition_i_margin(n2, nearby, grid).margin > 0);
    CHECK(condition_ii_margin(n2, disk, nearby, grid).margin > 0);
  }
}

TEST_CASE("avoid_ray gap selection") {
  CHECK(avoid_ray({Complex(1, 0), Complex(2, 0), Complex(0.5, 0)}).value() ==
        doctest::Approx(kPi));
  const double mid =
      avoid_ray({Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)}).value();
  CHECK(mid == doctest::Approx(kPi / 4));  // ties resolved to the smallest angle
  std::vector<Complex> dense;
  for (int j = 0; j < 720; ++j) dense.push_back(std::polar(1.0, 2.0 * kPi * j / 720));
  CHECK_FALSE(avoid_ray(dense).has_value());
  CHECK_FALSE(avoid_ray({}).has_value());
  CHECK_FALSE(avoid_ray({Complex(0, 0)}).has_value());  // zeros carry no argument
}

TEST_CASE("corollary classification") {
  const DomainGeometry disk = DomainGeometry::disk(1.0);
  const SampleGrid grid = grid_for(disk);

  // A = 2I, n = 1: case 1 with a confirmed small-angle ray
  const CoefficientField two = CoefficientField::constant(disk, 2.0 * CMat::Identity(2, 2), 1.0);
  const CorollaryVerdict v1 = corollary_classify(two, disk, grid);
  CHECK(v1.kase == CorollaryCase::RealRealDetCriterion);
  REQUIRE(v1.ray.has_value());
  CHECK(v1.margin_i > 0.1);
  CHECK(v1.margin_ii > 0.1);

  // A = I: determinant criterion fails, nothing else applies
  const CoefficientField id = CoefficientField::constant(disk, CMat::Identity(2, 2), 1.0);
  CHECK(corollary_classify(id, disk, grid).kase == CorollaryCase::None);

  // cube diag(1,2,3), n = 1: a_dd n = 1 on the faces perpendicular to e1
  const DomainGeometry cube = DomainGeometry::cube(1.0);
  const CoefficientField f123 = CoefficientField::constant(cube, diag3(1, 2, 3), 1.0);
  const CorollaryVerdict v3 = corollary_classify(f123, cube, grid_for(cube));
  CHECK(v3.kase == CorollaryCase::None);
  CHECK(v3.note.find("a_dd") != std::string::npos);

  // case 2: real A, n complex with a uniform imaginary part
  const CoefficientField complex_n =
      CoefficientField::constant(disk, 2.0 * CMat::Identity(2, 2), Complex(1.0, 0.5));
  const CorollaryVerdict v2 = corollary_classify(complex_n, disk, grid);
  CHECK(v2.kase == CorollaryCase::RealAComplexN);
  REQUIRE(v2.ray.has_value());

  // case 3: complex A with values confined near a ray, real n
  const CoefficientField rotated = CoefficientField::constant(
      disk, std::polar(1.0, 0.9) * 2.0 * CMat::Identity(2, 2), 1.0);
  const CorollaryVerdict vc = corollary_classify(rotated, disk, grid);
  CHECK(vc.kase == CorollaryCase::ComplexRayAvoidance);
  REQUIRE(vc.ray.has_value());
  CHECK(vc.margin_i > 0);
  CHECK(vc.margin_ii > 0);

  // a returned case implies a nonempty admissible set in a ray scan
  const RayScanResult scan = ray_scan(two, disk, 360, grid);
  CHECK(!scan.admissible.empty());
}
