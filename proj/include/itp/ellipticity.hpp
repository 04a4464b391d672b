#ifndef ITP_ELLIPTICITY_HPP
#define ITP_ELLIPTICITY_HPP

#include "itp/fields.hpp"

namespace itp {

/// Roots of (xi1 + lambda xi2) . A (xi1 + lambda xi2) = 0 in lambda.
/// sign_split says the roots straddle the real axis (Im+ > 0 > Im-);
/// without it the labels fall back to ordering by modulus and the matrix
/// is non-elliptic at this pair.
struct PencilRoots {
  Complex lambda_plus;
  Complex lambda_minus;
  Complex discriminant;
  bool sign_split = false;
};

PencilRoots pencil_roots(const CMat& A, const Vec& xi1, const Vec& xi2);

struct EllipticityWitness {
  Vec point;
  Vec dir1;
  Vec dir2;  // empty for the d>=3 single-direction check
};

struct EllipticityReport {
  bool elliptic = false;
  double worst_margin = 0.0;
  EllipticityWitness witness;
};

/// d=2 root-sign check over orthonormal direction pairs (e(th), e(th+pi/2)).
EllipticityReport check_elliptic_2d(const CoefficientField& field, const SampleGrid& grid,
                                    double tol = kDefaultTolerance);

/// d>=3 nondegeneracy check: margin = min |xi . A(x) xi| over unit xi.
EllipticityReport check_elliptic_nd(const CoefficientField& field, const SampleGrid& grid,
                                    double tol = kDefaultTolerance);

/// Dispatch on the field dimension.
EllipticityReport check_elliptic(const CoefficientField& field, const SampleGrid& grid,
                                 double tol = kDefaultTolerance);

}  // namespace itp

#endif
