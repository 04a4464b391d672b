#include "itp/parameter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "itp/minimize.hpp"
#include "itp/parallel.hpp"

namespace itp {

namespace {

/// Boundary symbol scalars at one frame, shared by Condition II paths.
struct FrameSymbol {
  Complex q11 = 0, q12 = 0, q22 = 0, p1 = 0, p2 = 0, add = 0;
  Complex n = 1.0;
  int d = 2;

  static FrameSymbol from(const RotatedCoefficients& rot) {
    FrameSymbol s;
    s.d = rot.dimension();
    const CMat& A = rot.Atilde;
    if (s.d == 2) {
      s.q11 = A(0, 0);
      s.p1 = A(0, 1);
      s.add = A(1, 1);
    } else {
      s.q11 = A(0, 0);
      s.q12 = A(0, 1);
      s.q22 = A(1, 1);
      s.p1 = A(0, 2);
      s.p2 = A(1, 2);
      s.add = A(2, 2);
    }
    s.n = rot.n_boundary;
    return s;
  }

  Complex det_B(double t1, double t2) const {
    const Complex p = p1 * t1 + p2 * t2;
    return add * (q11 * t1 * t1 + 2.0 * q12 * t1 * t2 + q22 * t2 * t2) - p * p;
  }
};

/// Condition-II slice at one frame and tangential direction: the
/// expression is u*(det B(tau_hat) - 1) + (1-u)*W2 with
/// W2 = -(a_dd n - 1) e^{2 i phi}, a segment in the complex plane.
SegmentDistance frame_segment(const FrameSymbol& s, Complex e2, double t1, double t2) {
  const Complex w1 = s.det_B(t1, t2) - 1.0;
  const Complex w2 = -(s.add * s.n - 1.0) * e2;
  return segment_distance(w2, w1);
}

struct FrameMargin {
  double margin = 1e300;
  double t1 = 1.0, t2 = 0.0;
  double u = 0.0;
};

FrameMargin frame_margin(const FrameSymbol& s, Complex e2, int tau_resolution) {
  FrameMargin best;
  if (s.d == 2) {
    const SegmentDistance sd = frame_segment(s, e2, 1.0, 0.0);
    best.margin = sd.distance;
    best.u = sd.u;
    return best;
  }
  double best_psi = 0.0;
  for (int j = 0; j < tau_resolution; ++j) {
    const double psi = 2.0 * kPi * j / tau_resolution;
    const SegmentDistance sd = frame_segment(s, e2, std::cos(psi), std::sin(psi));
    if (sd.distance < best.margin) {
      best.margin = sd.distance;
      best_psi = psi;
      best.u = sd.u;
    }
  }
  // polish the tangential angle within one grid step
  const double h = 2.0 * kPi / tau_resolution;
  auto f = [&](double psi) { return frame_segment(s, e2, std::cos(psi), std::sin(psi)).distance; };
  const auto [psi_min, val_min] = golden_minimize(f, best_psi - h, best_psi + h);
  if (val_min < best.margin) {
    best.margin = val_min;
    best_psi = psi_min;
    best.u = frame_segment(s, e2, std::cos(psi_min), std::sin(psi_min)).u;
  }
  best.t1 = std::cos(best_psi);
  best.t2 = std::sin(best_psi);
  return best;
}

}  // namespace

Ray::Ray(double angle) {
  phi = std::fmod(angle, 2.0 * kPi);
  if (phi < 0.0) phi += 2.0 * kPi;
}

Complex Ray::direction() const { return std::polar(1.0, phi); }
Complex Ray::ksq_direction() const { return std::polar(1.0, 2.0 * phi); }

Complex interior_symbol(const CoefficientField& field, const Vec& x, const Vec& sigma,
                        Complex k) {
  return -quadratic_form(field.A(x), sigma, sigma) + k * k * field.n(x);
}

namespace {

/// Ray-independent data for the interior margin: the form values along
/// the sampled directions per point, and n per point.  A constant field
/// collapses to one representative point.
struct InteriorCache {
  std::vector<Complex> form;  // point-major, direction-minor
  std::vector<Complex> n;
  std::size_t npts = 0, ndirs = 0;

  static InteriorCache build(const CoefficientField& field, const SampleGrid& grid) {
    if (grid.interior.empty() || grid.directions.empty())
      throw std::invalid_argument("condition_i_margin: empty sample grid");
    InteriorCache cache;
    cache.npts = field.is_constant() ? 1 : grid.interior.size();
    cache.ndirs = grid.directions.size();
    cache.form.resize(cache.npts * cache.ndirs);
    cache.n.resize(cache.npts);
    parallel_for(cache.npts, [&](std::size_t ip) {
      const CMat A = field.A(grid.interior[ip]);
      cache.n[ip] = field.n(grid.interior[ip]);
      for (std::size_t id = 0; id < cache.ndirs; ++id)
        cache.form[ip * cache.ndirs + id] =
            quadratic_form(A, grid.directions[id], grid.directions[id]);
    });
    return cache;
  }
};

ConditionIMargin condition_i_from_cache(const InteriorCache& cache, const SampleGrid& grid,
                                        Complex e2) {
  // On the slice |sigma|^2 + rho^2 = 1 with u = |sigma|^2 the symbol is
  // (1-u) e^{2 i phi} n(x) - u sigma_hat.A sigma_hat: a segment in u,
  // minimized exactly.
  double best = 1e300, best_u = 0.0;
  std::size_t bp = 0, bd = 0;
  for (std::size_t ip = 0; ip < cache.npts; ++ip) {
    const Complex K = e2 * cache.n[ip];
    for (std::size_t id = 0; id < cache.ndirs; ++id) {
      const SegmentDistance sd = segment_distance(K, -cache.form[ip * cache.ndirs + id]);
      if (sd.distance < best) {
        best = sd.distance;
        best_u = sd.u;
        bp = ip;
        bd = id;
      }
    }
  }
  ConditionIMargin out;
  out.margin = best;
  out.minimizer.point = grid.interior[bp];
  out.minimizer.direction = grid.directions[bd];
  out.minimizer.u = best_u;
  out.minimizer.rho = std::sqrt(std::max(0.0, 1.0 - best_u));
  return out;
}

struct FrameCache {
  std::vector<FrameSymbol> symbols;
  std::vector<BoundaryFrame> frames;

  static FrameCache build(const CoefficientField& field, const DomainGeometry& geometry,
                          const SampleGrid& grid) {
    if (grid.boundary.empty())
      throw std::invalid_argument("condition_ii_margin: no boundary samples");
    FrameCache cache;
    cache.symbols.resize(grid.boundary.size());
    cache.frames.resize(grid.boundary.size());
    parallel_for(grid.boundary.size(), [&](std::size_t i) {
      cache.frames[i] = boundary_frame(geometry, grid.boundary[i]);
      cache.symbols[i] = FrameSymbol::from(rotate_to_frame(
          field.A(cache.frames[i].point), field.n(cache.frames[i].point), cache.frames[i]));
    });
    return cache;
  }
};

ConditionIIMargin condition_ii_from_cache(const FrameCache& cache, Complex e2,
                                          int tau_resolution) {
  std::size_t worst = 0;
  FrameMargin best;
  for (std::size_t i = 0; i < cache.symbols.size(); ++i) {
    const FrameMargin m = frame_margin(cache.symbols[i], e2, tau_resolution);
    if (m.margin < best.margin) {
      best = m;
      worst = i;
    }
  }
  ConditionIIMargin out;
  out.margin = best.margin;
  out.minimizer.frame = cache.frames[worst];
  const int dt = cache.symbols[worst].d - 1;
  out.minimizer.tau_hat = Vec(dt);
  out.minimizer.tau_hat[0] = best.t1;
  if (dt == 2) out.minimizer.tau_hat[1] = best.t2;
  out.minimizer.u = best.u;
  out.minimizer.rho = std::sqrt(std::max(0.0, 1.0 - best.u));
  return out;
}

}  // namespace

ConditionIMargin condition_i_margin(const CoefficientField& field, Ray ray,
                                    const SampleGrid& grid) {
  return condition_i_from_cache(InteriorCache::build(field, grid), grid,
                                ray.ksq_direction());
}

ConditionIIMargin condition_ii_margin(const CoefficientField& field,
                                      const DomainGeometry& geometry, Ray ray,
                                      const SampleGrid& grid, int tau_resolution) {
  return condition_ii_from_cache(FrameCache::build(field, geometry, grid),
                                 ray.ksq_direction(), tau_resolution);
}

double condition_ii_margin_at_frame(const RotatedCoefficients& rot, Ray ray,
                                    int tau_resolution) {
  return frame_margin(FrameSymbol::from(rot), ray.ksq_direction(), tau_resolution).margin;
}

RayScanResult ray_scan(const CoefficientField& field, const DomainGeometry& geometry,
                       int phi_resolution, const SampleGrid& grid, double tol,
                       int tau_resolution) {
  if (phi_resolution < 1) throw std::invalid_argument("ray_scan: phi resolution must be >= 1");
  // the heavy data (rotated frames, form values) does not depend on phi
  const InteriorCache interior = InteriorCache::build(field, grid);
  const FrameCache frames = FrameCache::build(field, geometry, grid);

  RayScanResult out;
  out.reports.resize(phi_resolution);
  parallel_for(out.reports.size(), [&](std::size_t j) {
    const Ray ray(2.0 * kPi * j / phi_resolution);
    RayMarginReport rep;
    rep.ray = ray;
    const ConditionIMargin mi = condition_i_from_cache(interior, grid, ray.ksq_direction());
    const ConditionIIMargin mii =
        condition_ii_from_cache(frames, ray.ksq_direction(), tau_resolution);
    rep.condition_i = mi.margin;
    rep.condition_ii = mii.margin;
    rep.minimizer_i = mi.minimizer;
    rep.minimizer_ii = mii.minimizer;
    rep.admissible = mi.margin > tol && mii.margin > tol;
    out.reports[j] = std::move(rep);
  });
  for (std::size_t j = 0; j < out.reports.size(); ++j) {
    if (out.reports[j].admissible) out.admissible.push_back(j);
    const auto score = [&](const RayMarginReport& r) {
      return std::min(r.condition_i, r.condition_ii);
    };
    if (score(out.reports[j]) > score(out.reports[out.best_index])) out.best_index = j;
  }
  return out;
}

std::optional<double> avoid_ray(const std::vector<Complex>& values, double min_gap) {
  std::vector<double> args;
  args.reserve(values.size());
  for (const Complex& v : values) {
    if (std::abs(v) == 0.0) continue;  // zero has no argument
    double a = std::arg(v);
    if (a < 0.0) a += 2.0 * kPi;
    args.push_back(a);
  }
  if (args.empty()) return std::nullopt;
  std::sort(args.begin(), args.end());
  double best_gap = 0.0, best_mid = 0.0;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const double a = args[i];
    const double b = i + 1 < args.size() ? args[i + 1] : args[0] + 2.0 * kPi;
    const double gap = b - a;
    if (gap > best_gap + 1e-12) {
      best_gap = gap;
      best_mid = std::fmod(a + gap / 2.0, 2.0 * kPi);
    } else if (std::abs(gap - best_gap) <= 1e-12) {
      const double mid = std::fmod(a + gap / 2.0, 2.0 * kPi);
      if (mid < best_mid) best_mid = mid;  // tie: smallest angle
    }
  }
  if (best_gap <= 2.0 * min_gap) return std::nullopt;
  return best_mid;
}

namespace {

/// Small-|phi| ray schedule: 5, -5, 10, -10, ... degrees.
std::vector<Ray> small_phi_schedule() {
  std::vector<Ray> rays;
  for (int deg = 5; deg <= 85; deg += 5) {
    rays.emplace_back(deg * kPi / 180.0);
    rays.emplace_back(-deg * kPi / 180.0);
  }
  return rays;
}

struct ConfirmedRay {
  Ray ray{0.0};
  double margin_i = 0.0, margin_ii = 0.0;
  bool ok = false;
};

ConfirmedRay confirm(const CoefficientField& field, const DomainGeometry& geometry,
                     const SampleGrid& grid, Ray ray, const CorollaryOptions& opts) {
  ConfirmedRay c;
  c.ray = ray;
  c.margin_i = condition_i_margin(field, ray, grid).margin;
  c.margin_ii = condition_ii_margin(field, geometry, ray, grid, opts.tau_resolution).margin;
  c.ok = c.margin_i > opts.tol && c.margin_ii > opts.tol;
  return c;
}

ConfirmedRay first_confirmed(const CoefficientField& field, const DomainGeometry& geometry,
                             const SampleGrid& grid, const CorollaryOptions& opts) {
  for (const Ray& ray : small_phi_schedule()) {
    const ConfirmedRay c = confirm(field, geometry, grid, ray, opts);
    if (c.ok) return c;
  }
  return {};
}

}  // namespace

CorollaryVerdict corollary_classify(const CoefficientField& field,
                                    const DomainGeometry& geometry, const SampleGrid& grid,
                                    const CorollaryOptions& opts) {
  CorollaryVerdict verdict;

  const EllipticityReport ell = check_elliptic(field, grid, opts.tol);
  if (!ell.elliptic) {
    verdict.note = "field is not elliptic (margin " + std::to_string(ell.worst_margin) + ")";
    return verdict;
  }

  // n must stay away from 0 on the closure
  bool a_real = true, n_real = true;
  double min_abs_n = 1e300, min_imag_n = 1e300;
  Vec n_witness = grid.interior.front();
  for (const Vec& x : grid.interior) {
    const Complex nv = field.n(x);
    if (std::abs(nv) < min_abs_n) {
      min_abs_n = std::abs(nv);
      n_witness = x;
    }
    min_imag_n = std::min(min_imag_n, std::abs(nv.imag()));
    if (std::abs(nv.imag()) > 1e-14 * (1.0 + std::abs(nv))) n_real = false;
    if (a_real && !matrix_is_real(field.A(x))) a_real = false;
  }
  if (min_abs_n <= opts.tol) {
    verdict.note = "n vanishes on the closure (|n| = " + std::to_string(min_abs_n) + ")";
    return verdict;
  }

  // a_dd n != 1 on the boundary, with margin
  std::vector<RotatedCoefficients> rots(grid.boundary.size());
  for (std::size_t i = 0; i < grid.boundary.size(); ++i) {
    const BoundaryFrame fr = boundary_frame(geometry, grid.boundary[i]);
    rots[i] = rotate_to_frame(field.A(fr.point), field.n(fr.point), fr);
  }
  double min_addn = 1e300;
  for (const auto& rot : rots) {
    const int d = rot.dimension();
    const Complex addn = rot.Atilde(d - 1, d - 1) * rot.n_boundary;
    min_addn = std::min(min_addn, std::abs(addn - 1.0));
  }
  if (min_addn <= opts.tol) {
    verdict.note = "a_dd * n = 1 on the boundary (margin " + std::to_string(min_addn) + ")";
    return verdict;
  }

  // case 1: real data with the determinant criterion on the boundary
  if (a_real && n_real) {
    double det_margin = 1e300;
    for (const auto& rot : rots) {
      if (rot.dimension() == 2) {
        det_margin = std::min(det_margin, std::abs(rot.Atilde.determinant() - 1.0));
      } else {
        det_margin = std::min(det_margin, m_matrix(rot).determinant().real());
      }
    }
    if (det_margin > opts.tol) {
      const ConfirmedRay c = first_confirmed(field, geometry, grid, opts);
      if (c.ok) {
        verdict.kase = CorollaryCase::RealRealDetCriterion;
        verdict.ray = c.ray;
        verdict.margin_i = c.margin_i;
        verdict.margin_ii = c.margin_ii;
        return verdict;
      }
      verdict.note = "determinant criterion holds but no small-angle ray confirmed";
    } else {
      verdict.note = "real data: boundary determinant criterion fails (margin " +
                     std::to_string(det_margin) + ")";
    }
  }

  // case 2: real A, complex n bounded away from the real axis
  if (a_real && !n_real && min_imag_n > opts.epsilon_imag) {
    const ConfirmedRay c = first_confirmed(field, geometry, grid, opts);
    if (c.ok) {
      verdict.kase = CorollaryCase::RealAComplexN;
      verdict.ray = c.ray;
      verdict.margin_i = c.margin_i;
      verdict.margin_ii = c.margin_ii;
      return verdict;
    }
  }

  // case 3: complex data, ray avoidance of the two value sets
  bool sl_ok = true;
  for (const auto& rot : rots)
    if (!sl_verdict(rot, opts.tau_resolution, opts.tol).passed) {
      sl_ok = false;
      break;
    }
  if (sl_ok) {
    for (const Vec& x : grid.interior) {
      const CMat A = field.A(x);
      const Complex nv = field.n(x);
      for (const Vec& sg : grid.directions)
        verdict.interior_values.push_back(quadratic_form(A, sg, sg) / nv);
    }
    for (const auto& rot : rots) {
      const FrameSymbol s = FrameSymbol::from(rot);
      const Complex denom = s.add * s.n - 1.0;
      if (s.d == 2) {
        verdict.boundary_values.push_back((s.det_B(1.0, 0.0) - 1.0) / denom);
      } else {
        for (int j = 0; j < 90; ++j) {
          const double psi = 2.0 * kPi * j / 90;
          verdict.boundary_values.push_back((s.det_B(std::cos(psi), std::sin(psi)) - 1.0) / denom);
        }
      }
    }
    std::vector<Complex> all = verdict.interior_values;
    all.insert(all.end(), verdict.boundary_values.begin(), verdict.boundary_values.end());
    if (const auto psi = avoid_ray(all, opts.min_gap)) {
      // the avoided ray lives in the k^2 plane; k-ray via k^2 in l1
      const Ray ray(std::fmod(*psi / 2.0, kPi));
      const ConfirmedRay c = confirm(field, geometry, grid, ray, opts);
      if (c.ok) {
        verdict.kase = CorollaryCase::ComplexRayAvoidance;
        verdict.ray = c.ray;
        verdict.margin_i = c.margin_i;
        verdict.margin_ii = c.margin_ii;
        return verdict;
      }
      if (verdict.note.empty()) verdict.note = "avoided ray failed margin confirmation";
    } else if (verdict.note.empty()) {
      verdict.note = "value sets leave no free ray";
    }
  } else if (verdict.note.empty()) {
    verdict.note = "Shapiro-Lopatinskii condition fails on the boundary";
  }
  return verdict;
}

}  // namespace itp
