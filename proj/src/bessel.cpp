#include "itp/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace itp {

using Complex = std::complex<double>;

Complex bessel_j(int m, Complex z) {
  if (m < 0) throw std::invalid_argument("bessel_j: order must be nonnegative");
  if (std::abs(z) >= 50.0) throw std::domain_error("bessel_j: |z| outside the series window");

  if (z == Complex(0.0, 0.0)) return m == 0 ? 1.0 : 0.0;

  const Complex half = 0.5 * z;
  Complex term = 1.0;
  for (int j = 1; j <= m; ++j) term *= half / static_cast<double>(j);  // (z/2)^m / m!
  const Complex w = -half * half;

  // terms grow until j ~ |z|/2, so convergence is only tested past that
  const int j_floor = static_cast<int>(std::abs(z) / 2.0) + 2;
  Complex sum = term, comp = 0.0;  // Neumaier compensation
  for (int j = 1; j < 400; ++j) {
    term *= w / (static_cast<double>(j) * static_cast<double>(m + j));
    const Complex t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
    if (j >= j_floor && std::abs(term) <= 1e-15 * (std::abs(sum) + 1e-300)) return sum + comp;
  }
  throw std::runtime_error("bessel_j: series failed to converge");
}

Complex bessel_j_prime(int m, Complex z) {
  if (m == 0) return -bessel_j(1, z);
  if (z == Complex(0.0, 0.0)) return m == 1 ? 0.5 : 0.0;
  return bessel_j(m - 1, z) - static_cast<double>(m) / z * bessel_j(m, z);
}

}  // namespace itp
