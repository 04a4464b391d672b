#ifndef ITP_SPECTRA_HPP
#define ITP_SPECTRA_HPP

#include <functional>
#include <optional>
#include <vector>

#include "itp/contour.hpp"
#include "itp/types.hpp"

namespace itp {

/// Radially symmetric disk problem
///   A = alpha * (e_r e_r^T + a(r) e_phi e_phi^T),  n = 1 scaled by c,
/// with a == 1 on [0, match_radius] so the solution is an exact Bessel
/// function there; initial data is imposed at match_radius, which keeps
/// the integration away from the r = 0 singularity.  alpha = 1 is the
/// plain Example-2 family; the isotropic member a == 1 covers A = alpha*I.
struct RadialProblem {
  double radius = 1.0;
  std::function<double(double)> a_profile;
  double match_radius = 0.5;
  Complex c_scale = 1.0;         // coefficient of k^2 in the v equation
  double conormal_scale = 1.0;   // alpha: co-normal derivative is alpha * d/dr
  int mode = 0;
  double ode_tol = 1e-11;

  static RadialProblem example2(double a1, int mode, Complex c = 1.0, double radius = 1.0,
                                double match_radius = 0.5);
  static RadialProblem isotropic(double alpha, int mode, Complex c = 1.0, double radius = 1.0);
};

/// (v(R), v'(R)) of v'' + v'/r + (c k^2 - a(r) m^2 / r^2) v = 0 started
/// from the regular Bessel solution J_m(sqrt(c) k r) at match_radius.
/// The principal sqrt(c) branch is used; flipping it scales the pair by
/// (-1)^m, which cancels from any zero of the dispersion.
std::pair<Complex, Complex> radial_v(const RadialProblem& problem, Complex k);

/// Boundary-matching determinant of angular mode m:
///   D_m(k) = u(R) * alpha * v'(R) - u'(R) * v(R),  u = J_m(k r).
/// Its zeros are the transmission eigenvalues of that mode.
Complex dispersion(const RadialProblem& problem, Complex k);

struct DispersionFunction {
  RadialProblem problem;
  Complex operator()(Complex k) const { return dispersion(problem, k); }
};

struct CScanEntry {
  Complex c;
  bool identically_zero = false;
  double probe_max = 0.0;  // max |D_m| over the probe grid
  std::optional<ZeroCount> zeros;
};

/// Theorem-2 style scan: for each scaling c, either reports the dispersion
/// as identically zero (probe max below 1e-9) or counts zeros in the
/// rectangle.
std::vector<CScanEntry> c_scan(const RadialProblem& problem, const std::vector<Complex>& cs,
                               const Rectangle& rect, int contour_resolution = 256);

/// The explicit whole-plane eigenvalue construction on the unit cube with
/// A = diag(1,2,3), n = 1: u = v = a cos(k x1) + b sin(k x1).
struct CubeCase {
  Complex k;
  Complex a = 1.0, b = 0.0;
  int grid_resolution = 8;
};

struct CubeResidualReport {
  double max_residual = 0.0;   // over both equations and both boundary pairings
  bool trivial_ansatz = false; // u identically zero
};

CubeResidualReport validate_cube(const CubeCase& c);

struct DiskValidationReport {
  double max_abs_d0 = 0.0;
  bool all_below_tol = false;
  bool sl_all_passed = false;
  double sl_min_margin = 0.0;
};

/// Example-2 counterexample probe: with c = 1 every sampled k must satisfy
/// |D_0(k)| < tol while the same field still passes the boundary-condition
/// check when a(1) != 1.
DiskValidationReport validate_disk(const RadialProblem& problem,
                                   const std::vector<Complex>& k_samples, double tol = 1e-9);

}  // namespace itp

#endif
