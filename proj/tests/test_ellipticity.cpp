#include <doctest.h>

#include <cmath>
#include <random>

#include "itp/ellipticity.hpp"

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

Vec e2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

SampleGrid small_grid(const DomainGeometry& g, int n = 9, int dirs = 16) {
  GridResolution res;
  res.interior_per_axis = n;
  res.boundary_count = 16;
  res.face_per_axis = 3;
  res.direction_count = dirs;
  return sample(g, res);
}

}  // namespace

TEST_CASE("pencil roots at reference pairs") {
  // A = I: 1 + lambda^2 = 0
  const PencilRoots r1 = pencil_roots(CMat::Identity(2, 2), e2(1, 0), e2(0, 1));
  CHECK(std::abs(r1.lambda_plus - Complex(0, 1)) < 1e-14);
  CHECK(std::abs(r1.lambda_minus - Complex(0, -1)) < 1e-14);
  CHECK(r1.sign_split);

  // A = diag(2,3): roots +- i sqrt(2/3)
  const PencilRoots r2 = pencil_roots(diag2(2, 3), e2(1, 0), e2(0, 1));
  CHECK(std::abs(r2.lambda_plus - Complex(0, 0.816496580927726)) < 1e-12);
  CHECK(std::abs(r2.lambda_minus + Complex(0, 0.816496580927726)) < 1e-12);

  // A = diag(1,-1): real roots +-1, no sign split
  const PencilRoots r3 = pencil_roots(diag2(1, -1), e2(1, 0), e2(0, 1));
  CHECK_FALSE(r3.sign_split);
  CHECK(std::abs(std::abs(r3.lambda_plus) - 1.0) < 1e-14);
  CHECK(std::abs(r3.lambda_plus.imag()) < 1e-14);

  CHECK_THROWS_AS(pencil_roots(CMat::Identity(2, 2), e2(1, 0), e2(2, 0)), std::invalid_argument);
  CHECK_THROWS_AS(pencil_roots(diag2(1, 0), e2(1, 0), e2(0, 1)), std::invalid_argument);
}

TEST_CASE("pencil root residuals and conjugacy on random matrices") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  int done = 0;
  for (int it = 0; it < 10000; ++it) {
    CMat A(2, 2);
    const bool complex_case = it % 2 == 0;
    A(0, 0) = complex_case ? Complex(u(rng), u(rng)) : Complex(u(rng), 0.0);
    A(1, 1) = complex_case ? Complex(u(rng), u(rng)) : Complex(u(rng), 0.0);
    A(0, 1) = complex_case ? Complex(u(rng), u(rng)) : Complex(u(rng), 0.0);
    A(1, 0) = A(0, 1);
    const Vec x1 = e2(std::cos(u(rng)), std::sin(u(rng)));
    const Vec x2 = e2(-x1[1], x1[0]);
    PencilRoots r;
    try {
      r = pencil_roots(A, x1, x2);
    } catch (const std::invalid_argument&) {
      continue;  // degenerate leading coefficient
    }
    const Complex a = quadratic_form(A, x2, x2);
    const Complex b = 2.0 * quadratic_form(A, x1, x2);
    const Complex c = quadratic_form(A, x1, x1);
    const double scale = 1.0 + A.cwiseAbs().maxCoeff();
    for (Complex root : {r.lambda_plus, r.lambda_minus})
      CHECK(std::abs(a * root * root + b * root + c) < 1e-10 * scale);
    if (!complex_case && r.sign_split)
      CHECK(std::abs(r.lambda_minus - std::conj(r.lambda_plus)) < 1e-10);
    ++done;
  }
  CHECK(done > 9000);
}

TEST_CASE("d=2 ellipticity equals det A > 0 for real symmetric matrices") {
  const DomainGeometry disk = DomainGeometry::disk(1.0);
  const SampleGrid grid = small_grid(disk, 3, 8);
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  int checked = 0;
  for (int it = 0; it < 10000; ++it) {
    CMat A(2, 2);
    A(0, 0) = u(rng);
    A(1, 1) = u(rng);
    A(0, 1) = u(rng);
    A(1, 0) = A(0, 1);
    const double det = A.determinant().real();
    if (std::abs(det) < 1e-3) continue;  // bounded away from the degenerate set
    const CoefficientField f = CoefficientField::constant(disk, A, 1.0);
    const EllipticityReport rep = check_elliptic_2d(f, grid);
    CHECK(rep.elliptic == (det > 0));
    ++checked;
  }
  CHECK(checked > 9500);
}

TEST_CASE("reference 2d fields") {
  const DomainGeometry disk = DomainGeometry::disk(1.0);
  const SampleGrid grid = small_grid(disk);

  const CoefficientField id = CoefficientField::constant(disk, CMat::Identity(2, 2), 1.0);
  const EllipticityReport r1 = check_elliptic_2d(id, grid);
  CHECK(r1.elliptic);
  CHECK(r1.worst_margin == doctest::Approx(1.0));

  const CoefficientField indef = CoefficientField::constant(disk, diag2(1, -1), 1.0);
  const EllipticityReport r2 = check_elliptic_2d(indef, grid);
  CHECK_FALSE(r2.elliptic);

  const CoefficientField ex2 = CoefficientField::example2(disk, 2.0);
  const EllipticityReport r3 = check_elliptic_2d(ex2, grid);
  CHECK(r3.elliptic);  // eigenvalues in [1, 2], positive definite everywhere
}

TEST_CASE("d=3 nondegeneracy margins") {
  const DomainGeometry cube = DomainGeometry::cube(1.0);
  SampleGrid grid = small_grid(cube, 4, 200);

  const CoefficientField d123 = CoefficientField::constant(cube, diag3(1, 2, 3), 1.0);
  const EllipticityReport r1 = check_elliptic_nd(d123, grid);
  CHECK(r1.elliptic);
  CHECK(r1.worst_margin == doctest::Approx(1.0).epsilon(1e-6));

  const CoefficientField cone = CoefficientField::constant(cube, diag3(1, 1, -1), 1.0);
  const EllipticityReport r2 = check_elliptic_nd(cone, grid);
  CHECK_FALSE(r2.elliptic);  // the descent reaches the cone
  CHECK(r2.worst_margin < 1e-10);

  const CoefficientField rotated =
      CoefficientField::constant(cube, Complex(0, 1) * CMat::Identity(3, 3), 1.0);
  const EllipticityReport r3 = check_elliptic_nd(rotated, grid);
  CHECK(r3.elliptic);
  CHECK(r3.worst_margin == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("margins do not increase under grid refinement") {
  const DomainGeometry disk = DomainGeometry::disk(1.0);
  const CoefficientField ex2 = CoefficientField::example2(disk, 3.0);
  const CoefficientField cst = CoefficientField::constant(disk, diag2(2, 3), 1.0);
  double prev_ex2 = 1e300, prev_cst = 1e300;
  for (int n : {5, 9, 17}) {
    const SampleGrid grid = small_grid(disk, n, 8 * (n - 1) / 4);
    const double m_ex2 = check_elliptic_2d(ex2, grid).worst_margin;
    const double m_cst = check_elliptic_2d(cst, grid).worst_margin;
    CHECK(m_ex2 <= prev_ex2 + 1e-12);
    CHECK(m_cst <= prev_cst + 1e-12);
    prev_ex2 = m_ex2;
    prev_cst = m_cst;
  }
  // diag(2,3): min over the slice is sqrt(det)/max eigenvalue = sqrt(6)/3
  CHECK(prev_cst == doctest::Approx(std::sqrt(6.0) / 3.0).epsilon(1e-9));
}
