#include "itp/ellipticity.hpp"

#include <cmath>
#include <stdexcept>

#include "itp/minimize.hpp"
#include "itp/parallel.hpp"

namespace itp {

namespace {

Vec rot90v(const Vec& v) {
  Vec w(2);
  w << -v[1], v[0];
  return w;
}

Vec angle_dir(double th) {
  Vec e(2);
  e << std::cos(th), std::sin(th);
  return e;
}

/// Root-sign margin at one orthonormal pair; <= 0 marks a non-elliptic
/// sample (real roots, one-signed pair, or a degenerate leading term).
double pair_margin(const CMat& A, const Vec& e1, const Vec& e2) {
  try {
    const PencilRoots roots = pencil_roots(A, e1, e2);
    return std::min(roots.lambda_plus.imag(), -roots.lambda_minus.imag());
  } catch (const std::invalid_argument&) {
    return 0.0;  // degenerate leading coefficient: the form vanishes along e2
  }
}

/// Projected gradient descent of |xi . A xi|^2 on the unit sphere, seeded
/// at the worst grid direction.  A sampled margin can sit ~1e-3 above a
/// conical zero, far beyond the declared tolerance; the descent closes
/// that gap.
double polish_direction_margin(const CMat& A, Vec xi) {
  const double scale = A.cwiseAbs().maxCoeff() + 1e-300;
  double value = std::abs(quadratic_form(A, xi, xi));
  double step = 0.25;
  for (int it = 0; it < 400; ++it) {
    const Complex g = quadratic_form(A, xi, xi);
    Eigen::VectorXcd w = A * xi.cast<Complex>();
    Vec grad(xi.size());
    for (Eigen::Index i = 0; i < xi.size(); ++i)
      grad[i] = 4.0 * (std::conj(g) * w[i]).real();
    grad -= grad.dot(xi) * xi;  // tangent projection
    const double gn = grad.norm();
    if (gn < 1e-16 * scale * scale) break;
    bool moved = false;
    while (step > 1e-14) {
      Vec cand = (xi - step / (scale * scale) * grad).normalized();
      const double cv = std::abs(quadratic_form(A, cand, cand));
      if (cv < value) {
        xi = cand;
        value = cv;
        step *= 1.5;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return value;
}

}  // namespace

PencilRoots pencil_roots(const CMat& A, const Vec& xi1, const Vec& xi2) {
  if (xi1.size() != A.rows() || xi2.size() != A.rows())
    throw std::invalid_argument("pencil_roots: dimension mismatch");
  const double n1 = xi1.norm(), n2 = xi2.norm();
  const double gram = n1 * n1 * n2 * n2 - std::pow(xi1.dot(xi2), 2);
  if (gram <= 1e-24 * n1 * n1 * n2 * n2 || n1 == 0.0 || n2 == 0.0)
    throw std::invalid_argument("pencil_roots: linearly dependent directions");

  const Complex a = quadratic_form(A, xi2, xi2);
  const Complex b = 2.0 * quadratic_form(A, xi1, xi2);
  const Complex c = quadratic_form(A, xi1, xi1);
  const double scale = A.cwiseAbs().maxCoeff();
  if (std::abs(a) <= 1e-12 * scale * n2 * n2)
    throw std::invalid_argument("pencil_roots: degenerate leading coefficient");

  const Complex disc = b * b - 4.0 * a * c;
  const Complex s = std::sqrt(disc);
  const Complex r1 = (-b + s) / (2.0 * a);
  const Complex r2 = (-b - s) / (2.0 * a);

  PencilRoots out;
  out.discriminant = disc;
  const double imtol = 1e-12 * (1.0 + std::abs(r1) + std::abs(r2));
  if (r1.imag() > imtol && r2.imag() < -imtol) {
    out.lambda_plus = r1;
    out.lambda_minus = r2;
    out.sign_split = true;
  } else if (r2.imag() > imtol && r1.imag() < -imtol) {
    out.lambda_plus = r2;
    out.lambda_minus = r1;
    out.sign_split = true;
  } else {
    out.lambda_plus = std::abs(r1) >= std::abs(r2) ? r1 : r2;
    out.lambda_minus = std::abs(r1) >= std::abs(r2) ? r2 : r1;
    out.sign_split = false;
  }
  return out;
}

EllipticityReport check_elliptic_2d(const CoefficientField& field, const SampleGrid& grid,
                                    double tol) {
  if (field.dimension() != 2)
    throw std::invalid_argument("check_elliptic_2d requires a 2d field");
  if (grid.interior.empty() || grid.directions.empty())
    throw std::invalid_argument("check_elliptic_2d: empty sample grid");

  const std::size_t np = grid.interior.size();
  std::vector<double> mins(np);
  std::vector<std::size_t> argdir(np, 0);
  parallel_for(np, [&](std::size_t ip) {
    const CMat A = field.A(grid.interior[ip]);
    double best = 1e300;
    std::size_t bestd = 0;
    for (std::size_t id = 0; id < grid.directions.size(); ++id) {
      const Vec& e = grid.directions[id];
      const double m = pair_margin(A, e, rot90v(e));
      if (m < best) {
        best = m;
        bestd = id;
      }
    }
    mins[ip] = best;
    argdir[ip] = bestd;
  });

  std::size_t worst = 0;
  for (std::size_t ip = 1; ip < np; ++ip)
    if (mins[ip] < mins[worst]) worst = ip;

  // polish the angle within one grid step at the worst point
  const CMat A = field.A(grid.interior[worst]);
  const double h = kPi / grid.directions.size();
  const double th0 = std::atan2(grid.directions[argdir[worst]][1],
                                grid.directions[argdir[worst]][0]);
  auto margin_at = [&](double th) { return pair_margin(A, angle_dir(th), angle_dir(th + kPi / 2)); };
  const auto [th_best, polished] = golden_minimize(margin_at, th0 - h, th0 + h);
  const double raw = std::min(mins[worst], polished);

  EllipticityReport rep;
  rep.elliptic = raw > tol;
  rep.worst_margin = std::max(0.0, raw);
  rep.witness.point = grid.interior[worst];
  rep.witness.dir1 = angle_dir(th_best);
  rep.witness.dir2 = angle_dir(th_best + kPi / 2);
  return rep;
}

EllipticityReport check_elliptic_nd(const CoefficientField& field, const SampleGrid& grid,
                                    double tol) {
  if (field.dimension() < 3)
    throw std::invalid_argument("check_elliptic_nd requires dimension >= 3");
  if (grid.interior.empty() || grid.directions.empty())
    throw std::invalid_argument("check_elliptic_nd: empty sample grid");

  const std::size_t np = grid.interior.size();
  std::vector<double> mins(np);
  std::vector<std::size_t> argdir(np, 0);
  parallel_for(np, [&](std::size_t ip) {
    const CMat A = field.A(grid.interior[ip]);
    double best = 1e300;
    std::size_t bestd = 0;
    for (std::size_t id = 0; id < grid.directions.size(); ++id) {
      const double v = std::abs(quadratic_form(A, grid.directions[id], grid.directions[id]));
      if (v < best) {
        best = v;
        bestd = id;
      }
    }
    mins[ip] = best;
    argdir[ip] = bestd;
  });

  std::size_t worst = 0;
  for (std::size_t ip = 1; ip < np; ++ip)
    if (mins[ip] < mins[worst]) worst = ip;

  const CMat A = field.A(grid.interior[worst]);
  const double polished = polish_direction_margin(A, grid.directions[argdir[worst]]);
  const double raw = std::min(mins[worst], polished);

  EllipticityReport rep;
  rep.elliptic = raw > tol;
  rep.worst_margin = std::max(0.0, raw);
  rep.witness.point = grid.interior[worst];
  rep.witness.dir1 = grid.directions[argdir[worst]];
  return rep;
}

EllipticityReport check_elliptic(const CoefficientField& field, const SampleGrid& grid,
                                 double tol) {
  return field.dimension() == 2 ? check_elliptic_2d(field, grid, tol)
                                : check_elliptic_nd(field, grid, tol);
}

}  // namespace itp
