#include "itp/commands.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "itp/ellipticity.hpp"
#include "itp/parameter.hpp"

namespace itp {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string num(Complex v) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", v.real(), v.imag());
  return buf;
}

std::string point_str(const Vec& x) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) s += ", ";
    s += num(x[i]);
  }
  return s + ")";
}

std::string csv_header(const ProblemSpec& spec, const std::string& columns) {
  return "# tool=itp version=" + std::string(kToolVersion) + " config=" + config_hash(spec) +
         " units=radians,dimensionless\n" + columns + "\n";
}

std::string frame_param_csv(const BoundaryParam& p) {
  if (!p.on_face) return num(p.t) + ",,";
  return std::to_string(p.face.face) + "," + num(p.face.u) + "," + num(p.face.v);
}

std::string header(const ProblemSpec& spec, const std::string& command) {
  std::ostringstream os;
  os << "itp " << kToolVersion << ": " << command << "\n";
  os << "config " << config_hash(spec) << ": " << to_json(spec).dump() << "\n";
  return os.str();
}

}  // namespace

Report cmd_check_ellipticity(const ProblemSpec& spec) {
  Report rep;
  const CoefficientField field = make_field(spec);
  const SampleGrid grid = sample(spec.geometry, grid_resolution(spec));
  const EllipticityReport ell = check_elliptic(field, grid, spec.analysis.tolerance);

  std::ostringstream os;
  os << header(spec, "check-ellipticity");
  os << "verdict: " << (ell.elliptic ? "elliptic" : "not elliptic") << "\n";
  os << "worst margin: " << num(ell.worst_margin) << "\n";
  os << "witness point: " << point_str(ell.witness.point) << "\n";
  os << "witness direction: " << point_str(ell.witness.dir1) << "\n";
  rep.text = os.str();
  rep.data = {{"command", "check-ellipticity"},
              {"version", kToolVersion},
              {"config", config_hash(spec)},
              {"elliptic", ell.elliptic},
              {"worstMargin", ell.worst_margin}};
  rep.exit_code = ell.elliptic ? 0 : 2;
  return rep;
}

Report cmd_check_sl(const ProblemSpec& spec) {
  Report rep;
  const CoefficientField field = make_field(spec);
  const SLScanResult scan =
      sl_scan(field, spec.geometry, grid_resolution(spec), spec.analysis.tolerance);
  const SampleGrid grid = sample(spec.geometry, grid_resolution(spec));

  std::string csv = csv_header(spec, "frame_param,face_u,face_v,detB_margin,re_a_dd,passed");
  for (std::size_t i = 0; i < scan.verdicts.size(); ++i) {
    const SLVerdict& v = scan.verdicts[i];
    csv += frame_param_csv(grid.boundary[i]) + "," + num(v.detB_margin) + "," + num(v.re_add) +
           "," + (v.passed ? "1" : "0") + "\n";
  }
  rep.artifacts.push_back({"sl_margins.csv", csv});

  const SLVerdict& worst = scan.verdicts[scan.worst_index];
  std::size_t pass_count = 0;
  for (const auto& v : scan.verdicts)
    if (v.passed) ++pass_count;

  std::ostringstream os;
  os << header(spec, "check-sl");
  os << "frames: " << scan.verdicts.size() << ", passed: " << pass_count << "\n";
  os << "verdict: " << (scan.all_passed ? "pass" : "fail") << "\n";
  os << "minimum detB margin: " << num(worst.detB_margin) << " at frame "
     << point_str(worst.frame.point) << " (Re a_dd = " << num(worst.re_add) << ")\n";
  rep.text = os.str();
  rep.data = {{"command", "check-sl"},
              {"version", kToolVersion},
              {"config", config_hash(spec)},
              {"frames", scan.verdicts.size()},
              {"passed", pass_count},
              {"allPassed", scan.all_passed},
              {"minMargin", worst.detB_margin}};
  rep.exit_code = scan.all_passed ? 0 : 2;
  return rep;
}

Report cmd_find_rays(const ProblemSpec& spec) {
  Report rep;
  const CoefficientField field = make_field(spec);
  const SampleGrid grid = sample(spec.geometry, grid_resolution(spec));
  const RayScanResult scan =
      ray_scan(field, spec.geometry, spec.analysis.phi_grid, grid, spec.analysis.tolerance,
               spec.analysis.tau_resolution);

  std::string csv = csv_header(spec, "phi_rad,margin_condition_i,margin_condition_ii,admissible");
  for (const RayMarginReport& r : scan.reports)
    csv += num(r.ray.phi) + "," + num(r.condition_i) + "," + num(r.condition_ii) + "," +
           (r.admissible ? "1" : "0") + "\n";
  rep.artifacts.push_back({"ray_margins.csv", csv});

  CorollaryOptions copts;
  copts.tol = spec.analysis.tolerance;
  copts.epsilon_imag = spec.analysis.epsilon_imag;
  copts.min_gap = spec.analysis.min_gap_degrees * kPi / 180.0;
  copts.tau_resolution = spec.analysis.tau_resolution;
  const CorollaryVerdict cor = corollary_classify(field, spec.geometry, grid, copts);

  const RayMarginReport& best = scan.reports[scan.best_index];
  std::ostringstream os;
  os << header(spec, "find-rays");
  os << "rays scanned: " << scan.reports.size() << ", admissible: " << scan.admissible.size()
     << "\n";
  os << "best ray: phi = " << num(best.ray.phi) << " (margins " << num(best.condition_i) << ", "
     << num(best.condition_ii) << ")\n";
  os << "condition I minimizer: point " << point_str(best.minimizer_i.point) << ", direction "
     << point_str(best.minimizer_i.direction) << ", |sigma|^2 = " << num(best.minimizer_i.u)
     << ", rho = " << num(best.minimizer_i.rho) << "\n";
  os << "condition II minimizer: frame " << point_str(best.minimizer_ii.frame.point)
     << ", tau " << point_str(best.minimizer_ii.tau_hat) << ", rho = "
     << num(best.minimizer_ii.rho) << "\n";
  const char* case_name = cor.kase == CorollaryCase::RealRealDetCriterion ? "1 (real data, determinant criterion)"
                          : cor.kase == CorollaryCase::RealAComplexN      ? "2 (real A, complex n)"
                          : cor.kase == CorollaryCase::ComplexRayAvoidance ? "3 (ray avoidance)"
                                                                           : "none";
  os << "sufficient-condition case: " << case_name << "\n";
  if (cor.ray)
    os << "confirmed ray: phi = " << num(cor.ray->phi) << " (margins " << num(cor.margin_i)
       << ", " << num(cor.margin_ii) << ")\n";
  if (!cor.note.empty()) os << "note: " << cor.note << "\n";
  rep.text = os.str();
  rep.data = {{"command", "find-rays"},
              {"version", kToolVersion},
              {"config", config_hash(spec)},
              {"admissibleCount", scan.admissible.size()},
              {"bestPhi", best.ray.phi},
              {"bestMarginI", best.condition_i},
              {"bestMarginII", best.condition_ii},
              {"corollaryCase", static_cast<int>(cor.kase)}};
  rep.exit_code = scan.admissible.empty() ? 2 : 0;
  return rep;
}

Report cmd_spectrum(const ProblemSpec& spec) {
  Report rep;
  std::ostringstream os;
  os << header(spec, "spectrum");
  const Rectangle rect = spec.analysis.rectangle;

  std::string zeros_csv = csv_header(spec, "mode,k_re,k_im");
  std::string grid_csv = csv_header(spec, "mode,k_re,k_im,abs_dispersion");
  nlohmann::json modes_json = nlohmann::json::array();

  for (int m : spec.analysis.modes) {
    const RadialProblem problem = make_radial(spec, m);
    const DispersionFunction D{problem};

    // |D_m| sampling grid for plotting
    const int gx = 64, gy = 16;
    for (int i = 0; i < gx; ++i)
      for (int j = 0; j < gy; ++j) {
        const Complex k(rect.re0 + rect.width() * (i + 0.5) / gx,
                        rect.im0 + rect.height() * (j + 0.5) / gy);
        grid_csv += std::to_string(m) + "," + num(k.real()) + "," + num(k.imag()) + "," +
                    num(std::abs(D(k))) + "\n";
      }

    // identically-zero probe before any contour work
    double probe_max = 0.0;
    const int pn = 10;
    for (int i = 0; i < pn; ++i)
      for (int j = 0; j < pn; ++j) {
        const Complex k(rect.re0 + rect.width() * (i + 0.5) / pn,
                        rect.im0 + rect.height() * (j + 0.5) / pn);
        probe_max = std::max(probe_max, std::abs(D(k)));
      }
    nlohmann::json mj{{"mode", m}, {"probeMax", probe_max}};
    if (probe_max < 1e-9) {
      os << "mode " << m << ": dispersion identically zero on the probe grid (max |D| = "
         << num(probe_max) << "): non-discrete spectrum\n";
      mj["identicallyZero"] = true;
    } else {
      const ZeroCount zc = count_zeros(D, rect, spec.analysis.contour_points, true);
      os << "mode " << m << ": " << zc.count << " zero(s) in rectangle ["
         << num(rect.re0) << "," << num(rect.re1) << "]x[" << num(rect.im0) << ","
         << num(rect.im1) << "], winding residual " << num(zc.winding_residual) << "\n";
      for (const Complex& z : zc.refined_zeros) {
        os << "  zero: " << num(z) << "\n";
        zeros_csv += std::to_string(m) + "," + num(z.real()) + "," + num(z.imag()) + "\n";
      }
      mj["identicallyZero"] = false;
      mj["count"] = zc.count;
    }
    modes_json.push_back(mj);
  }

  // optional Theorem-2 style scan over scalings c
  if (!spec.analysis.c_scan.empty()) {
    const RadialProblem base = make_radial(spec, spec.analysis.modes.front());
    const auto entries =
        c_scan(base, spec.analysis.c_scan, rect, spec.analysis.contour_points);
    for (const CScanEntry& e : entries) {
      if (e.identically_zero) {
        os << "c = " << num(e.c) << ": identically zero (max probe |D| = " << num(e.probe_max)
           << ")\n";
        continue;
      }
      os << "c = " << num(e.c) << ": " << e.zeros->count << " zero(s)";
      for (const Complex& z : e.zeros->refined_zeros) os << " " << num(z);
      os << "\n";
    }
  }

  rep.artifacts.push_back({"spectrum_zeros.csv", zeros_csv});
  rep.artifacts.push_back({"dispersion_grid.csv", grid_csv});
  rep.text = os.str();
  rep.data = {{"command", "spectrum"},
              {"version", kToolVersion},
              {"config", config_hash(spec)},
              {"modes", modes_json}};
  rep.exit_code = 0;
  return rep;
}

Report cmd_validate_examples() {
  Report rep;
  std::ostringstream os;
  os << "itp " << kToolVersion << ": validate-examples\n";
  bool all_ok = true;

  // cube construction: every complex k is an eigenvalue of an elliptic problem
  double worst_cube = 0.0;
  bool cube_ok = true;
  for (int i = 0; i < 20; ++i) {
    const double rr = 1.25 + 3.75 * (i % 4) / 3.0;
    const double th = 0.15 + 2.9 * (i / 4) / 4.0;
    CubeCase c;
    c.k = std::polar(rr, th);
    c.a = Complex(1.0, 0.0);
    c.b = Complex(0.4, 0.2);
    const CubeResidualReport r = validate_cube(c);
    worst_cube = std::max(worst_cube, r.max_residual);
    if (r.max_residual >= 1e-10 || r.trivial_ansatz) cube_ok = false;
  }
  os << (cube_ok ? "PASS" : "FAIL") << " cube ansatz residuals: max " << num(worst_cube)
     << " over 20 complex k\n";

  CMat A = CMat::Zero(3, 3);
  A(0, 0) = 1.0;
  A(1, 1) = 2.0;
  A(2, 2) = 3.0;
  const DomainGeometry cube = DomainGeometry::cube(1.0);
  const CoefficientField cube_field = CoefficientField::constant(cube, A, 1.0);
  const SLScanResult cube_scan = sl_scan(cube_field, cube, GridResolution::scaled(cube, 24));
  os << (cube_scan.all_passed ? "PASS" : "FAIL") << " cube boundary condition: min margin "
     << num(cube_scan.verdicts[cube_scan.worst_index].detB_margin) << "\n";
  all_ok = all_ok && cube_ok && cube_scan.all_passed;

  // disk construction: identically-zero mode-0 dispersion with the boundary
  // condition still passing
  const RadialProblem disk_problem = RadialProblem::example2(2.0, 0);
  std::vector<Complex> ks;
  for (int i = 0; i < 20; ++i)
    ks.push_back(std::polar(0.6 + 4.4 * i / 19.0, -0.1 + 0.2 * i / 19.0));
  const DiskValidationReport disk = validate_disk(disk_problem, ks);
  os << (disk.all_below_tol ? "PASS" : "FAIL") << " disk identically-zero dispersion: max |D0| "
     << num(disk.max_abs_d0) << " over 20 k samples\n";
  os << (disk.sl_all_passed ? "PASS" : "FAIL") << " disk boundary condition: min margin "
     << num(disk.sl_min_margin) << "\n";
  all_ok = all_ok && disk.all_below_tol && disk.sl_all_passed;

  rep.text = os.str();
  rep.data = {{"command", "validate-examples"},
              {"version", kToolVersion},
              {"cubeMaxResidual", worst_cube},
              {"diskMaxAbsD0", disk.max_abs_d0},
              {"allPassed", all_ok}};
  rep.exit_code = all_ok ? 0 : 2;
  return rep;
}

}  // namespace itp
