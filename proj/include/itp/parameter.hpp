#ifndef ITP_PARAMETER_HPP
#define ITP_PARAMETER_HPP

#include <optional>
#include <vector>

#include "itp/lopatinskii.hpp"

namespace itp {

/// The ray l = { e^{i phi} rho : rho >= 0 } in the complex k-plane.
struct Ray {
  double phi = 0.0;
  explicit Ray(double angle);
  Complex direction() const;      // e^{i phi}
  Complex ksq_direction() const;  // e^{2 i phi}
};

/// Interior symbol P(x, sigma, k) = -sigma . A(x) sigma + k^2 n(x).
Complex interior_symbol(const CoefficientField& field, const Vec& x, const Vec& sigma,
                        Complex k);

struct InteriorMinimizer {
  Vec point;
  Vec direction;   // unit sigma direction
  double rho = 0;  // |k|, with |sigma|^2 + rho^2 = 1
  double u = 0;    // |sigma|^2
};

struct ConditionIMargin {
  double margin = 0.0;
  InteriorMinimizer minimizer;
};

/// Condition-I constant: min of |P| over the closure samples and the
/// compact slice |sigma|^2 + |k|^2 = 1, k on the ray.  The slice parameter
/// is minimized exactly (the symbol is linear in u = |sigma|^2).
ConditionIMargin condition_i_margin(const CoefficientField& field, Ray ray,
                                    const SampleGrid& grid);

struct BoundaryMinimizer {
  BoundaryFrame frame;
  Vec tau_hat;     // unit tangential direction
  double rho = 0;  // |k|
  double u = 0;    // |tau|^2
};

struct ConditionIIMargin {
  double margin = 0.0;
  BoundaryMinimizer minimizer;
};

/// Condition-II constant: min over boundary frames of
/// |det B(tau) - |tau|^2 - (a_dd n(x0) - 1) k^2| on the unit slice.
ConditionIIMargin condition_ii_margin(const CoefficientField& field,
                                      const DomainGeometry& geometry, Ray ray,
                                      const SampleGrid& grid, int tau_resolution = 720);

/// Same minimization restricted to a single frame.
double condition_ii_margin_at_frame(const RotatedCoefficients& rot, Ray ray,
                                    int tau_resolution = 720);

struct RayMarginReport {
  Ray ray{0.0};
  double condition_i = 0.0;
  double condition_ii = 0.0;
  InteriorMinimizer minimizer_i;
  BoundaryMinimizer minimizer_ii;
  bool admissible = false;
};

struct RayScanResult {
  std::vector<RayMarginReport> reports;
  std::size_t best_index = 0;          // max of min(margin I, margin II)
  std::vector<std::size_t> admissible;
};

RayScanResult ray_scan(const CoefficientField& field, const DomainGeometry& geometry,
                       int phi_resolution, const SampleGrid& grid,
                       double tol = kDefaultTolerance, int tau_resolution = 720);

/// Largest angular gap between the arguments of the given values; returns
/// the gap midpoint when the gap exceeds twice min_gap, ties broken by the
/// smallest midpoint angle.  Zero values carry no argument and are skipped.
std::optional<double> avoid_ray(const std::vector<Complex>& values,
                                double min_gap = 5.0 * kPi / 180.0);

enum class CorollaryCase { RealRealDetCriterion, RealAComplexN, ComplexRayAvoidance, None };

struct CorollaryVerdict {
  CorollaryCase kase = CorollaryCase::None;
  std::optional<Ray> ray;
  double margin_i = 0.0;
  double margin_ii = 0.0;
  std::vector<Complex> interior_values;  // sigma.A sigma / n samples (case 3)
  std::vector<Complex> boundary_values;  // (det B - 1)/(a_dd n - 1) samples (case 3)
  std::string note;
};

struct CorollaryOptions {
  double tol = kDefaultTolerance;
  double epsilon_imag = 1e-3;            // case-2 |Im n| floor
  double min_gap = 5.0 * kPi / 180.0;    // avoid_ray gap parameter
  int tau_resolution = 720;
};

/// Classifies the field against the three sufficient-discreteness cases.
/// Preconditions (ellipticity, n != 0 on the closure, a_dd n != 1 on the
/// boundary) that fail produce the None verdict with a witness note.  Any
/// returned ray has both margins recomputed and positive.
CorollaryVerdict corollary_classify(const CoefficientField& field,
                                    const DomainGeometry& geometry, const SampleGrid& grid,
                                    const CorollaryOptions& opts = {});

}  // namespace itp

#endif
