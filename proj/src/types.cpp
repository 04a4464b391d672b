#include "itp/types.hpp"

namespace itp {

Complex quadratic_form(const CMat& A, const Vec& v, const Vec& w) {
  Complex acc = 0.0;
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) acc += v[i] * A(i, j) * w[j];
  return acc;
}

CMat mirror_upper(const CMat& A) {
  CMat out = A;
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < i; ++j) out(i, j) = out(j, i);
  return out;
}

bool matrix_is_real(const CMat& A, double tol) {
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      if (std::abs(A(i, j).imag()) > tol * (1.0 + std::abs(A(i, j)))) return false;
  return true;
}

SegmentDistance segment_distance(Complex p, Complex q) {
  const Complex d = q - p;
  const double dd = std::norm(d);
  if (dd == 0.0) return {std::abs(p), 0.0};
  double u = -(p.real() * d.real() + p.imag() * d.imag()) / dd;
  u = std::clamp(u, 0.0, 1.0);
  return {std::abs(p + u * d), u};
}

}  // namespace itp
