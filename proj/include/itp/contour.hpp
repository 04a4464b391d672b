#ifndef ITP_CONTOUR_HPP
#define ITP_CONTOUR_HPP

#include <complex>
#include <functional>
#include <vector>

namespace itp {

struct Rectangle {
  double re0 = 0, re1 = 0, im0 = 0, im1 = 0;
  double width() const { return re1 - re0; }
  double height() const { return im1 - im0; }
  bool contains(std::complex<double> z, double tol = 0.0) const {
    return z.real() >= re0 - tol && z.real() <= re1 + tol && z.imag() >= im0 - tol &&
           z.imag() <= im1 + tol;
  }
};

struct ZeroCount {
  Rectangle rectangle;
  int count = 0;
  double winding_residual = 0.0;           // |winding - nearest integer|
  std::vector<std::complex<double>> refined_zeros;  // with multiplicity, sorted
};

using ComplexMap = std::function<std::complex<double>(std::complex<double>)>;

/// Argument-principle count of zeros inside the rectangle.  Contour
/// sampling starts at contour_resolution points per side and doubles until
/// every phase step satisfies |d arg f| < pi/2 (cap 2^16 per side).  A zero
/// within 1e-12 of the contour is an error; so is a winding number more
/// than 0.25 away from an integer.  With refine on, zeros are localized by
/// bisection of the box plus Newton polish and must match the count.
ZeroCount count_zeros(const ComplexMap& f, const Rectangle& rect,
                      int contour_resolution = 256, bool refine = true);

}  // namespace itp

#endif
