#ifndef ITP_LOPATINSKII_HPP
#define ITP_LOPATINSKII_HPP

#include <vector>

#include "itp/ellipticity.hpp"
#include "itp/fields.hpp"

namespace itp {

/// Coefficients frozen at a boundary point and rotated into the local
/// frame: Atilde = C A(x0) C^T with C real orthogonal, normal last.
struct RotatedCoefficients {
  CMat Atilde;
  Complex n_boundary = 1.0;
  BoundaryFrame frame;
  int dimension() const { return static_cast<int>(Atilde.rows()); }
};

RotatedCoefficients rotate_to_frame(const CMat& A, Complex n, const BoundaryFrame& frame);

/// The 2x2 boundary symbol block.  d=3 rows follow the tangential
/// quadratic form and the mixed normal entries; d=2 uses
/// [[a11 t^2, a12 t], [a12 t, a22]] so det B = det A * t^2.
struct TangentialSymbol {
  Vec tau;
  Eigen::Matrix2cd B;
  Complex det_B;
};

TangentialSymbol tangential_symbol(const RotatedCoefficients& rot, const Vec& tau);

/// Quadratic-form reformulation of det B != 1 (d=3 only):
/// M = [a33*a_ij - a_i3*a_j3]_{i,j<=2} - I.  For real data the usable
/// criterion is det M > 0.
Eigen::Matrix2cd m_matrix(const RotatedCoefficients& rot);

/// The stable half-space exponent: the root of
///   a_dd l^2 + 2i(a_{1d}t_1+..) l - sum a_ij t_i t_j = 0
/// with Re l < 0, square root branch fixed by Re(sqrt(det B)/a_dd) > 0.
Complex lambda0(const RotatedCoefficients& rot, const Vec& tau);

enum class SLClause { DetB, NegativeReal };

struct SLVerdict {
  BoundaryFrame frame;
  bool passed = false;
  double detB_margin = 0.0;  // min over |tau|=1 of |det B - 1|
  double re_add = 0.0;       // Re a_dd (normal-normal entry)
  SLClause used_clause = SLClause::DetB;
  Complex lambda0_witness;
  Vec tau_witness;
};

/// Shapiro-Lopatinskii check at one frame: pass iff det B stays away from 1
/// on the unit tau circle, or Re a_dd < 0.  The tau grid minimum is
/// polished to the continuum minimizer so margins are frame-rotation
/// invariant.
SLVerdict sl_verdict(const RotatedCoefficients& rot, int tau_resolution = 720,
                     double tol = kDefaultTolerance);

struct SLScanResult {
  std::vector<SLVerdict> verdicts;
  bool all_passed = false;
  std::size_t worst_index = 0;  // smallest detB margin
  EllipticityReport ellipticity;
};

/// Verdicts at every sampled boundary frame.  The field must be elliptic;
/// a non-elliptic field raises with the witness location.
SLScanResult sl_scan(const CoefficientField& field, const DomainGeometry& geometry,
                     const GridResolution& res, double tol = kDefaultTolerance);

/// Remark-2 sufficient condition: true when A > I or 0 < A < I
/// (eigenvalues of the real symmetric Atilde).  Implies sl_verdict passes.
bool remark2_check(const RotatedCoefficients& rot);

}  // namespace itp

#endif
