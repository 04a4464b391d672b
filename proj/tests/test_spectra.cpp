#include <doctest.h>

#include <cmath>
#include <random>

#include "itp/bessel.hpp"
#include "itp/ode.hpp"
#include "itp/spectra.hpp"

using namespace itp;

TEST_CASE("bessel series against an independent high-precision table") {
  // values computed with a 40-digit reference implementation
  CHECK(std::abs(bessel_j(0, 0.0) - Complex(1.0)) == 0.0);
  CHECK(std::abs(bessel_j(1, 0.0)) == 0.0);
  CHECK(std::abs(bessel_j(0, 1.0) - Complex(0.765197686557966551)) < 1e-14);
  CHECK(std::abs(bessel_j(0, 2.0) - Complex(0.223890779141235668)) < 1e-14);
  CHECK(std::abs(bessel_j(1, 1.0) - Complex(0.440050585744933516)) < 1e-14);
  CHECK(std::abs(bessel_j(2, 1.5) - Complex(0.232087672144214727)) < 1e-14);
  CHECK(std::abs(bessel_j(1, Complex(2, 1)) -
                 Complex(0.790623392553428336, -0.0799326941677760539)) < 1e-13);
  CHECK(std::abs(bessel_j(3, Complex(0.7, -0.2)) -
                 Complex(0.00534706730331161215, -0.00569959265750351445)) < 1e-15);
  CHECK(std::abs(bessel_j(0, Complex(8, 0.5)) -
                 Complex(0.189723082545458663, -0.122565957446222851)) < 1e-12);
  CHECK(std::abs(bessel_j(5, Complex(3, 2)) -
                 Complex(-0.09885798984869188, 0.0859246625629204304)) < 1e-13);

  // modified-Bessel behavior on the imaginary axis: J0(i) real and > 1
  const Complex j0i = bessel_j(0, Complex(0, 1));
  CHECK(j0i.real() == doctest::Approx(1.26606587775200834).epsilon(1e-14));
  CHECK(std::abs(j0i.imag()) < 1e-12);

  CHECK_THROWS_AS(bessel_j(0, Complex(50.5, 0)), std::domain_error);
  CHECK_THROWS_AS(bessel_j(-1, 1.0), std::invalid_argument);
}

TEST_CASE("derivative identity at 1000 random complex points") {
  std::mt19937 rng(2718);
  std::uniform_real_distribution<double> radius(0.05, 12.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_int_distribution<int> order(1, 6);
  for (int it = 0; it < 1000; ++it) {
    const Complex z = std::polar(radius(rng), angle(rng));
    const int m = order(rng);
    const Complex lhs = bessel_j_prime(m, z);
    const Complex rhs = 0.5 * (bessel_j(m - 1, z) - bessel_j(m + 1, z));
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
  // J0' = -J1 by definition of the m = 0 derivative
  CHECK(std::abs(bessel_j_prime(0, Complex(1.3, 0.4)) + bessel_j(1, Complex(1.3, 0.4))) == 0.0);
}

TEST_CASE("rk45 integrates a known oscillator") {
  // y'' = -y from 0 to pi/2: (sin, cos)
  OdeRhs rhs = [](double, const OdeState& y, OdeState& dy) {
    dy[0] = y[1];
    dy[1] = -y[0];
  };
  const OdeState y = integrate_rk45(rhs, 0.0, kPi / 2, {0.0, 1.0}, 1e-12);
  CHECK(std::abs(y[0] - Complex(1.0)) < 1e-10);
  CHECK(std::abs(y[1]) < 1e-10);
}

TEST_CASE("radial solution reduces to Bessel functions in closed form") {
  // a == 1, c = 1: v(R) = J_m(k R) continued from the match radius
  RadialProblem p = RadialProblem::isotropic(1.0, 0);
  for (const Complex k : {Complex(1.0), Complex(2.0, 0.3), Complex(5.0, -0.4)}) {
    const auto [v, vp] = radial_v(p, k);
    CHECK(std::abs(v - bessel_j(0, k)) < 1e-9);
    CHECK(std::abs(vp - k * bessel_j_prime(0, k)) < 1e-9);
  }

  // a == 1, c = 4, m = 1, k = 1: v(R) = J_1(2R), v'(R) = 2 J_1'(2R)
  RadialProblem p4 = RadialProblem::isotropic(1.0, 1, 4.0);
  const auto [v4, vp4] = radial_v(p4, 1.0);
  CHECK(std::abs(v4 - Complex(0.576724807756873387)) < 1e-9);
  CHECK(std::abs(vp4 - Complex(-0.128943249474402051)) < 1e-9);

  CHECK_THROWS_AS(radial_v(p, Complex(0.0, 0.0)), std::invalid_argument);
}

TEST_CASE("ode self-convergence at probe points") {
  RadialProblem p = RadialProblem::example2(2.0, 1);
  RadialProblem tight = p;
  tight.ode_tol = 0.5e-11;
  for (const Complex k : {Complex(2.0), Complex(4.0, 0.3)}) {
    const Complex d1 = dispersion(p, k);
    const Complex d2 = dispersion(tight, k);
    CHECK(std::abs(d1 - d2) < 1e-7 * (1.0 + std::abs(d1)));
  }
}

TEST_CASE("dispersion of the c=1 mode-0 problem vanishes identically") {
  RadialProblem p = RadialProblem::example2(2.0, 0);
  CHECK(std::abs(dispersion(p, 1.0)) < 1e-10);
  for (const Complex k : {Complex(0.7), Complex(3.0, 0.4), Complex(6.5, -0.25)})
    CHECK(std::abs(dispersion(p, k)) < 1e-9);
}

TEST_CASE("dispersion matches the closed Bessel form for c=4") {
  RadialProblem p = RadialProblem::isotropic(1.0, 0, 4.0);
  // D0(1) = J0(1)*2*J0'(2) - J0'(1)*J0(2), independently tabulated
  CHECK(std::abs(dispersion(p, 1.0) - Complex(-0.784093708848304739)) < 1e-9);
}

TEST_CASE("conjugate symmetry and branch invariance") {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> re(0.6, 6.0), im(-0.4, 0.4);
  for (int m : {0, 1, 2}) {
    RadialProblem p = RadialProblem::example2(2.0, m, 2.0);
    for (int it = 0; it < 8; ++it) {
      const Complex k(re(rng), im(rng));
      CHECK(std::abs(dispersion(p, std::conj(k)) - std::conj(dispersion(p, k))) < 1e-9);
    }
  }

  // flipping the sqrt(c) branch scales (v, v') by (-1)^m, so the
  // dispersion picks up exactly that sign
  for (int m : {0, 1}) {
    RadialProblem plus = RadialProblem::example2(2.0, m, Complex(2.0, 0.5));
    const Complex k(1.7, 0.1);
    const Complex rc = std::sqrt(Complex(2.0, 0.5));
    // integrate the flipped-branch initial data directly
    const Complex z0 = -rc * k * plus.match_radius;
    OdeState y0{bessel_j(m, z0), -rc * k * bessel_j_prime(m, z0)};
    const Complex ck2 = Complex(2.0, 0.5) * k * k;
    const double m2 = static_cast<double>(m) * m;
    const auto prof = plus.a_profile;
    OdeRhs rhs = [&](double r, const OdeState& y, OdeState& dy) {
      dy[0] = y[1];
      dy[1] = -y[1] / r - (ck2 - prof(r) * m2 / (r * r)) * y[0];
    };
    const OdeState yR = integrate_rk45(rhs, plus.match_radius, plus.radius, y0, plus.ode_tol);
    const Complex u = bessel_j(m, k);
    const Complex up = k * bessel_j_prime(m, k);
    const Complex flipped = u * yR[1] - up * yR[0];
    const Complex direct = dispersion(plus, k);
    const double sign = m % 2 == 0 ? 1.0 : -1.0;
    CHECK(std::abs(flipped - sign * direct) < 1e-9 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("argument-principle counting on polynomial references") {
  const ComplexMap cubic = [](Complex k) {
    return (k - Complex(1.0)) * (k - Complex(2.0, -1.0)) * (k + Complex(0.0, 3.0));
  };
  const ZeroCount c3 = count_zeros(cubic, {-4, 4, -4, 4});
  CHECK(c3.count == 3);
  CHECK(c3.winding_residual < 1e-6);
  REQUIRE(c3.refined_zeros.size() == 3);
  CHECK(std::abs(c3.refined_zeros[0] - Complex(0.0, -3.0)) < 1e-8);
  CHECK(std::abs(c3.refined_zeros[1] - Complex(1.0, 0.0)) < 1e-8);
  CHECK(std::abs(c3.refined_zeros[2] - Complex(2.0, -1.0)) < 1e-8);

  const ComplexMap quad = [](Complex k) { return k * k - 1.0; };
  CHECK(count_zeros(quad, {-2, 2, -1, 1}).count == 2);

  const ComplexMap entire = [](Complex k) { return std::exp(k); };
  CHECK(count_zeros(entire, {-3, 3, -2, 2}).count == 0);

  // a zero sitting on the contour is rejected
  CHECK_THROWS_AS(count_zeros(quad, {-1, 1, -1, 1}, 256, false), std::runtime_error);

  // refined zeros carry a small residual
  for (const Complex& z : c3.refined_zeros) CHECK(std::abs(cubic(z)) < 1e-8);
}

TEST_CASE("c-scan reproduces the scaling phenomenon") {
  RadialProblem p = RadialProblem::example2(2.0, 0);
  const Rectangle rect{0.5, 8.0, -0.5, 0.5};
  const auto entries = c_scan(p, {Complex(1.0), Complex(2.0)}, rect);
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].identically_zero);
  CHECK_FALSE(entries[1].identically_zero);
  REQUIRE(entries[1].zeros.has_value());
  CHECK(entries[1].zeros->count == 1);
  // the zero of the c=2 dispersion, from the closed Bessel form
  REQUIRE(entries[1].zeros->refined_zeros.size() == 1);
  CHECK(std::abs(entries[1].zeros->refined_zeros[0] - Complex(7.37512616314941)) < 1e-6);

  // doubling the contour resolution leaves the count unchanged
  const auto doubled = c_scan(p, {Complex(2.0)}, rect, 512);
  CHECK(doubled[0].zeros->count == entries[1].zeros->count);
}

TEST_CASE("cube construction residuals") {
  CubeCase a;
  a.k = 1.0;
  a.a = 1.0;
  a.b = 0.0;
  const CubeResidualReport r1 = validate_cube(a);
  CHECK(r1.max_residual < 1e-12);
  CHECK_FALSE(r1.trivial_ansatz);

  CubeCase b;
  b.k = Complex(2.0, 3.0);
  b.a = 1.0;
  b.b = 1.0;
  const CubeResidualReport r2 = validate_cube(b);
  CHECK(r2.max_residual < 1e-10);

  CubeCase trivial;
  trivial.k = 0.0;
  trivial.a = 0.0;
  trivial.b = 1.0;  // sin(0 x) == 0
  CHECK(validate_cube(trivial).trivial_ansatz);
}

TEST_CASE("disk validation: every k is an eigenvalue while the boundary check passes") {
  RadialProblem p = RadialProblem::example2(2.0, 0);
  std::vector<Complex> ks;
  for (int i = 0; i < 20; ++i) ks.push_back(std::polar(0.6 + 4.4 * i / 19.0, -0.1 + 0.2 * i / 19.0));
  const DiskValidationReport rep = validate_disk(p, ks);
  CHECK(rep.all_below_tol);
  CHECK(rep.max_abs_d0 < 1e-9);
  CHECK(rep.sl_all_passed);
  CHECK(rep.sl_min_margin == doctest::Approx(1.0).epsilon(1e-6));

  // a(1) = 1: the dispersion still vanishes but the boundary check fails
  RadialProblem flat = RadialProblem::example2(1.0, 0);
  const DiskValidationReport rep1 = validate_disk(flat, ks);
  CHECK(rep1.all_below_tol);
  CHECK_FALSE(rep1.sl_all_passed);

  // m = 1 on the same profile: not identically zero, finitely many zeros
  RadialProblem m1 = RadialProblem::example2(2.0, 1);
  const DispersionFunction D{m1};
  double probe_max = 0.0;
  for (int i = 0; i < 5; ++i) probe_max = std::max(probe_max, std::abs(D(Complex(1.0 + 1.5 * i, 0.1))));
  CHECK(probe_max > 1e-3);
  const ZeroCount zc = count_zeros(D, {0.5, 8.0, -0.5, 0.5});
  CHECK(zc.count == 0);  // finite (empty) in this window
}
