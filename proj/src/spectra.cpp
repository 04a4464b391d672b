#include "itp/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "itp/bessel.hpp"
#include "itp/fields.hpp"
#include "itp/lopatinskii.hpp"
#include "itp/ode.hpp"
#include "itp/parallel.hpp"

namespace itp {

namespace {

double quintic_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

}  // namespace

RadialProblem RadialProblem::example2(double a1, int mode, Complex c, double radius,
                                      double match_radius) {
  if (!(a1 > 0)) throw std::invalid_argument("example2: a1 must be positive");
  if (!(radius > match_radius)) throw std::invalid_argument("example2: radius <= match radius");
  RadialProblem p;
  p.radius = radius;
  p.match_radius = match_radius;
  p.a_profile = [a1, match_radius, radius](double r) {
    return 1.0 + (a1 - 1.0) * quintic_step((r - match_radius) / (radius - match_radius));
  };
  p.c_scale = c;
  p.mode = mode;
  return p;
}

RadialProblem RadialProblem::isotropic(double alpha, int mode, Complex c, double radius) {
  if (!(alpha > 0)) throw std::invalid_argument("isotropic: alpha must be positive");
  RadialProblem p;
  p.radius = radius;
  p.match_radius = 0.5 * radius;
  p.a_profile = [](double) { return 1.0; };
  p.c_scale = c / alpha;
  p.conormal_scale = alpha;
  p.mode = mode;
  return p;
}

std::pair<Complex, Complex> radial_v(const RadialProblem& problem, Complex k) {
  if (k == Complex(0.0, 0.0)) throw std::invalid_argument("radial_v: k must be nonzero");
  if (!problem.a_profile) throw std::invalid_argument("radial_v: missing profile");
  const int m = problem.mode;
  if (m < 0) throw std::invalid_argument("radial_v: mode must be nonnegative");

  const Complex rc = std::sqrt(problem.c_scale);  // principal branch
  const Complex z0 = rc * k * problem.match_radius;
  OdeState y0{bessel_j(m, z0), rc * k * bessel_j_prime(m, z0)};

  const Complex ck2 = problem.c_scale * k * k;
  const double m2 = static_cast<double>(m) * m;
  const auto& a = problem.a_profile;
  OdeRhs rhs = [&](double r, const OdeState& y, OdeState& dy) {
    dy[0] = y[1];
    dy[1] = -y[1] / r - (ck2 - a(r) * m2 / (r * r)) * y[0];
  };
  const OdeState yR = integrate_rk45(rhs, problem.match_radius, problem.radius, y0,
                                     problem.ode_tol);
  return {yR[0], yR[1]};
}

Complex dispersion(const RadialProblem& problem, Complex k) {
  const auto [v, vp] = radial_v(problem, k);
  const Complex u = bessel_j(problem.mode, k * problem.radius);
  const Complex up = k * bessel_j_prime(problem.mode, k * problem.radius);
  return u * problem.conormal_scale * vp - up * v;
}

std::vector<CScanEntry> c_scan(const RadialProblem& problem, const std::vector<Complex>& cs,
                               const Rectangle& rect, int contour_resolution) {
  std::vector<CScanEntry> out;
  out.reserve(cs.size());
  for (const Complex& c : cs) {
    RadialProblem p = problem;
    p.c_scale = c;
    CScanEntry entry;
    entry.c = c;

    const int pn = 7;
    std::vector<double> vals(pn * pn);
    parallel_for(vals.size(), [&](std::size_t idx) {
      const std::size_t i = idx / pn, j = idx % pn;
      const Complex k(rect.re0 + rect.width() * (i + 0.5) / pn,
                      rect.im0 + rect.height() * (j + 0.5) / pn);
      vals[idx] = std::abs(dispersion(p, k));
    });
    entry.probe_max = *std::max_element(vals.begin(), vals.end());
    if (entry.probe_max < 1e-9) {
      entry.identically_zero = true;  // non-discrete spectrum for this c
    } else {
      entry.zeros = count_zeros([&p](Complex k) { return dispersion(p, k); }, rect,
                                contour_resolution, true);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

CubeResidualReport validate_cube(const CubeCase& c) {
  const int n = std::max(2, c.grid_resolution);
  const Complex k = c.k, a = c.a, b = c.b;

  // exact derivatives of the trig ansatz u = v = a cos(k x1) + b sin(k x1);
  // derivatives along x2, x3 vanish identically
  auto u = [&](double x1) { return a * std::cos(k * x1) + b * std::sin(k * x1); };
  auto ux = [&](double x1) { return k * (-a * std::sin(k * x1) + b * std::cos(k * x1)); };
  auto uxx = [&](double x1) { return -k * k * (a * std::cos(k * x1) + b * std::sin(k * x1)); };
  auto grid = [n](int i) { return static_cast<double>(i) / (n - 1); };

  CubeResidualReport rep;
  double max_u = 0.0;
  // interior residuals of both equations on the n^3 tensor grid with
  // A = diag(1,2,3)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const double x1 = grid(i);
        const Complex helm = uxx(x1) + k * k * u(x1);
        const Complex aniso = 1.0 * uxx(x1) + 2.0 * 0.0 + 3.0 * 0.0 + k * k * u(x1);
        rep.max_residual = std::max({rep.max_residual, std::abs(helm), std::abs(aniso)});
        max_u = std::max(max_u, std::abs(u(x1)));
      }
  // boundary mismatches u - v and du/dnu - dv/dnu_A on all six faces
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (double x1 : {0.0, 1.0}) {  // faces perpendicular to x1: conormal is 1 * v_x1
        rep.max_residual = std::max(rep.max_residual, std::abs(u(x1) - u(x1)));
        rep.max_residual = std::max(rep.max_residual, std::abs(ux(x1) - 1.0 * ux(x1)));
      }
      const double x1 = grid(i);
      // faces perpendicular to x2: u_x2 = 0 against 2 * v_x2 = 0; faces
      // perpendicular to x3 carry factor 3
      rep.max_residual = std::max(rep.max_residual, std::abs(u(x1) - u(x1)));
      rep.max_residual = std::max(rep.max_residual, std::abs(Complex(0.0) - 2.0 * Complex(0.0)));
      rep.max_residual = std::max(rep.max_residual, std::abs(Complex(0.0) - 3.0 * Complex(0.0)));
    }
  rep.trivial_ansatz = max_u < 1e-15 * (std::abs(a) + std::abs(b) + 1.0);
  return rep;
}

DiskValidationReport validate_disk(const RadialProblem& problem,
                                   const std::vector<Complex>& k_samples, double tol) {
  DiskValidationReport rep;
  std::vector<double> vals(k_samples.size());
  parallel_for(k_samples.size(), [&](std::size_t i) {
    vals[i] = std::abs(dispersion(problem, k_samples[i]));
  });
  for (double v : vals) rep.max_abs_d0 = std::max(rep.max_abs_d0, v);
  rep.all_below_tol = rep.max_abs_d0 < tol;

  // the same coefficients as a field: boundary-condition check decouples
  // from the identically-zero dispersion
  const DomainGeometry disk = DomainGeometry::disk(problem.radius);
  CoefficientField field =
      CoefficientField::radial_polar(disk, problem.a_profile, 1.0, problem.match_radius);
  GridResolution res;
  res.interior_per_axis = 16;
  res.boundary_count = 90;
  res.direction_count = 32;
  try {
    const SLScanResult scan = sl_scan(field, disk, res);
    rep.sl_all_passed = scan.all_passed;
    rep.sl_min_margin = scan.verdicts[scan.worst_index].detB_margin;
  } catch (const std::runtime_error&) {
    rep.sl_all_passed = false;  // non-elliptic profile
  }
  return rep;
}

}  // namespace itp
