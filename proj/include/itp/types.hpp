#ifndef ITP_TYPES_HPP
#define ITP_TYPES_HPP

#include <Eigen/Dense>
#include <complex>

namespace itp {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDefaultTolerance = 1e-8;
inline constexpr const char* kToolVersion = "0.1.0";

/// v . A w for real vectors against a complex matrix.
Complex quadratic_form(const CMat& A, const Vec& v, const Vec& w);

/// Exact symmetry: copies the upper triangle onto the lower one.
CMat mirror_upper(const CMat& A);

bool matrix_is_real(const CMat& A, double tol = 1e-14);

/// Distance from the origin to the segment {(1-u) p + u q : u in [0,1]}.
struct SegmentDistance {
  double distance;
  double u;  // minimizing parameter
};
SegmentDistance segment_distance(Complex p, Complex q);

}  // namespace itp

#endif
