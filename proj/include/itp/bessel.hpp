#ifndef ITP_BESSEL_HPP
#define ITP_BESSEL_HPP

#include <complex>

namespace itp {

/// J_m(z) by the ascending power series, valid for |z| < 50 at this
/// problem's scale; terms stop at relative 1e-15.
std::complex<double> bessel_j(int m, std::complex<double> z);

/// J_m'(z) = J_{m-1}(z) - (m/z) J_m(z), with J_0' = -J_1.
std::complex<double> bessel_j_prime(int m, std::complex<double> z);

}  // namespace itp

#endif
