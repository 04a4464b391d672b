#include "itp/lopatinskii.hpp"

#include <cmath>
#include <stdexcept>

#include "itp/minimize.hpp"
#include "itp/parallel.hpp"

namespace itp {

namespace {

/// Per-frame scalars of the boundary symbol: q(t) = sum a_ij t_i t_j over
/// the tangential block, p(t) = mixed tangential-normal row, add = a_dd.
struct SymbolData {
  Complex q11 = 0, q12 = 0, q22 = 0;
  Complex p1 = 0, p2 = 0;
  Complex add = 0;
  int d = 2;

  static SymbolData from(const RotatedCoefficients& rot) {
    SymbolData s;
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
    return s;
  }

  Complex q(double t1, double t2) const {
    return q11 * t1 * t1 + 2.0 * q12 * t1 * t2 + q22 * t2 * t2;
  }
  Complex p(double t1, double t2) const { return p1 * t1 + p2 * t2; }
  Complex det_B(double t1, double t2) const {
    const Complex pp = p(t1, t2);
    return add * q(t1, t2) - pp * pp;
  }
};

Complex stable_sqrt(Complex det_B, Complex add) {
  // branch fixed by Re(sqrt(det B)/a_dd) > 0; an exact tie means the
  // half-space symbol is degenerate
  const Complex s = std::sqrt(det_B);
  const Complex ratio = s / add;
  const double scale = std::abs(ratio);
  if (std::abs(ratio.real()) <= 1e-14 * (1.0 + scale))
    throw std::runtime_error("branch undefined (non-elliptic symbol)");
  return ratio.real() > 0.0 ? s : -s;
}

Complex lambda0_from(const SymbolData& s, double t1, double t2) {
  const Complex det_B = s.det_B(t1, t2);
  const Complex root = stable_sqrt(det_B, s.add);
  return (-Complex(0.0, 1.0) * s.p(t1, t2) - root) / s.add;
}

}  // namespace

RotatedCoefficients rotate_to_frame(const CMat& A, Complex n, const BoundaryFrame& frame) {
  const int d = frame.dimension();
  if (A.rows() != d || A.cols() != d)
    throw std::invalid_argument("rotate_to_frame: dimension mismatch");
  const Mat& C = frame.transfer;
  if ((C * C.transpose() - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("rotate_to_frame: transfer matrix is not orthogonal");
  RotatedCoefficients rot;
  rot.Atilde = mirror_upper(C.cast<Complex>() * A * C.transpose().cast<Complex>());
  rot.n_boundary = n;
  rot.frame = frame;
  return rot;
}

TangentialSymbol tangential_symbol(const RotatedCoefficients& rot, const Vec& tau) {
  const SymbolData s = SymbolData::from(rot);
  if (tau.size() != rot.dimension() - 1)
    throw std::invalid_argument("tangential_symbol: tau must be a (d-1)-vector");
  if (tau.norm() == 0.0) throw std::invalid_argument("tangential_symbol: tau must be nonzero");
  const double t1 = tau[0];
  const double t2 = s.d == 3 ? tau[1] : 0.0;
  TangentialSymbol sym;
  sym.tau = tau;
  sym.B(0, 0) = s.q(t1, t2);
  sym.B(0, 1) = s.p(t1, t2);
  sym.B(1, 0) = s.p(t1, t2);
  sym.B(1, 1) = s.add;
  sym.det_B = s.det_B(t1, t2);
  return sym;
}

Eigen::Matrix2cd m_matrix(const RotatedCoefficients& rot) {
  if (rot.dimension() != 3) throw std::invalid_argument("m_matrix needs d = 3");
  const SymbolData s = SymbolData::from(rot);
  Eigen::Matrix2cd M;
  M(0, 0) = s.add * s.q11 - s.p1 * s.p1 - 1.0;
  M(0, 1) = s.add * s.q12 - s.p1 * s.p2;
  M(1, 0) = M(0, 1);
  M(1, 1) = s.add * s.q22 - s.p2 * s.p2 - 1.0;
  return M;
}

Complex lambda0(const RotatedCoefficients& rot, const Vec& tau) {
  if (tau.norm() == 0.0) throw std::invalid_argument("lambda0: tau must be nonzero");
  const SymbolData s = SymbolData::from(rot);
  return lambda0_from(s, tau[0], s.d == 3 ? tau[1] : 0.0);
}

SLVerdict sl_verdict(const RotatedCoefficients& rot, int tau_resolution, double tol) {
  const SymbolData s = SymbolData::from(rot);
  SLVerdict v;
  v.frame = rot.frame;
  v.re_add = s.add.real();

  double t1 = 1.0, t2 = 0.0;
  if (s.d == 2) {
    v.detB_margin = std::abs(s.det_B(1.0, 0.0) - 1.0);  // = |det A - 1|
  } else {
    if (tau_resolution < 360)
      throw std::invalid_argument("sl_verdict: tau resolution must be >= 360");
    auto f = [&](double psi) { return std::abs(s.det_B(std::cos(psi), std::sin(psi)) - 1.0); };
    double best = 1e300, best_psi = 0.0;
    for (int j = 0; j < tau_resolution; ++j) {
      const double psi = 2.0 * kPi * j / tau_resolution;
      const double val = f(psi);
      if (val < best) {
        best = val;
        best_psi = psi;
      }
    }
    const double h = 2.0 * kPi / tau_resolution;
    const auto [psi_min, val_min] = golden_minimize(f, best_psi - h, best_psi + h);
    v.detB_margin = std::min(best, val_min);
    t1 = std::cos(psi_min);
    t2 = std::sin(psi_min);
  }

  if (s.d == 2) {
    v.tau_witness = Vec::Constant(1, 1.0);
  } else {
    v.tau_witness = Vec(2);
    v.tau_witness << t1, t2;
  }
  v.lambda0_witness = lambda0_from(s, t1, t2);

  if (v.detB_margin > tol) {
    v.passed = true;
    v.used_clause = SLClause::DetB;
  } else if (v.re_add < -tol) {
    v.passed = true;
    v.used_clause = SLClause::NegativeReal;
  } else {
    v.passed = false;
    v.used_clause = SLClause::DetB;
  }
  return v;
}

SLScanResult sl_scan(const CoefficientField& field, const DomainGeometry& geometry,
                     const GridResolution& res, double tol) {
  const SampleGrid grid = sample(geometry, res);
  SLScanResult out;
  out.ellipticity = check_elliptic(field, grid, tol);
  if (!out.ellipticity.elliptic) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "non-elliptic field: margin %.6g at point (%.6g, %.6g%s)",
                  out.ellipticity.worst_margin, out.ellipticity.witness.point[0],
                  out.ellipticity.witness.point[1],
                  field.dimension() == 3 ? ", ..." : "");
    throw std::runtime_error(buf);
  }

  out.verdicts.resize(grid.boundary.size());
  parallel_for(grid.boundary.size(), [&](std::size_t i) {
    const BoundaryFrame frame = boundary_frame(geometry, grid.boundary[i]);
    const RotatedCoefficients rot =
        rotate_to_frame(field.A(frame.point), field.n(frame.point), frame);
    out.verdicts[i] = sl_verdict(rot, 720, tol);
  });

  out.all_passed = true;
  for (std::size_t i = 0; i < out.verdicts.size(); ++i) {
    if (!out.verdicts[i].passed) out.all_passed = false;
    if (out.verdicts[i].detB_margin < out.verdicts[out.worst_index].detB_margin)
      out.worst_index = i;
  }
  return out;
}

bool remark2_check(const RotatedCoefficients& rot) {
  if (!matrix_is_real(rot.Atilde))
    throw std::invalid_argument("remark2_check applies to real matrices only");
  Eigen::SelfAdjointEigenSolver<Mat> es(rot.Atilde.real());
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  return lmin > 1.0 || (lmin > 0.0 && lmax < 1.0);
}

}  // namespace itp
