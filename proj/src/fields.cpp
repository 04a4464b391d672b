#include "itp/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace itp {

namespace {

double quintic_step(double t) {
  // C^2 monotone ramp: s(0)=0, s(1)=1, s'=s''=0 at both ends
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

}  // namespace

CoefficientField CoefficientField::constant(DomainGeometry g, const CMat& A, Complex n) {
  const int d = g.dimension();
  if (A.rows() != d || A.cols() != d)
    throw std::invalid_argument("constant field: A must be d x d");
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j)
      if (std::abs(A(i, j) - A(j, i)) > 1e-12 * (1.0 + std::abs(A(i, j))))
        throw std::invalid_argument("constant field: A must be symmetric");
  CoefficientField f;
  f.geometry_ = std::move(g);
  f.source_ = FieldSource::Constant;
  f.const_A_ = mirror_upper(A);
  f.const_n_ = n;
  return f;
}

CoefficientField CoefficientField::example2(DomainGeometry disk, double a1, Complex n,
                                            double match_radius) {
  if (!(a1 > 0)) throw std::invalid_argument("example2 profile needs a1 > 0");
  const double R = disk.outer_radius() > 0 ? disk.outer_radius() : disk.radius();
  auto profile = [a1, match_radius, R](double r) {
    return 1.0 + (a1 - 1.0) * quintic_step((r - match_radius) / (R - match_radius));
  };
  auto f = radial_polar(std::move(disk), profile, n, match_radius);
  f.a1_ = a1;
  return f;
}

CoefficientField CoefficientField::example2(DomainGeometry disk, double a1, expr::Ast n_expr,
                                            double match_radius) {
  CoefficientField f = example2(std::move(disk), a1, Complex(1.0, 0.0), match_radius);
  f.n_expr_ = std::move(n_expr);
  f.n_is_expr_ = true;
  return f;
}

CoefficientField CoefficientField::radial_polar(DomainGeometry disk,
                                                std::function<double(double)> profile,
                                                Complex n, double match_radius) {
  if (disk.dimension() != 2)
    throw std::invalid_argument("radial_polar fields live on 2d domains");
  const double R = disk.kind() == GeometryKind::Annulus ? disk.outer_radius() : disk.radius();
  if (!(R > match_radius)) throw std::invalid_argument("radial_polar: radius must exceed match radius");
  for (int i = 0; i <= 8; ++i) {
    const double r = match_radius * i / 8.0;
    if (std::abs(profile(r) - 1.0) > 1e-12)
      throw std::invalid_argument("radial_polar: profile must equal 1 on [0, match radius]");
  }
  for (int i = 0; i <= 32; ++i) {
    const double r = match_radius + (R - match_radius) * i / 32.0;
    if (!(profile(r) > 0.0)) throw std::invalid_argument("radial_polar: profile must stay positive");
  }
  CoefficientField f;
  f.geometry_ = std::move(disk);
  f.source_ = FieldSource::RadialPolar;
  f.profile_ = std::move(profile);
  f.match_radius_ = match_radius;
  f.const_n_ = n;
  f.a1_ = f.profile_(R);
  return f;
}

CoefficientField CoefficientField::expressions(DomainGeometry g,
                                               std::vector<std::vector<expr::Ast>> a_upper,
                                               expr::Ast n_expr) {
  const int d = g.dimension();
  if (static_cast<int>(a_upper.size()) != d)
    throw std::invalid_argument("expression field: need d rows of upper-triangle entries");
  for (int i = 0; i < d; ++i)
    if (static_cast<int>(a_upper[i].size()) != d - i)
      throw std::invalid_argument("expression field: row " + std::to_string(i) +
                                  " must hold the entries from the diagonal rightward");
  CoefficientField f;
  f.geometry_ = std::move(g);
  f.source_ = FieldSource::Expression;
  f.a_exprs_ = std::move(a_upper);
  f.n_expr_ = std::move(n_expr);
  f.n_is_expr_ = true;
  return f;
}

CoefficientField CoefficientField::with_n_scale(Complex s) const {
  CoefficientField f = *this;
  f.n_scale_ *= s;
  return f;
}

void CoefficientField::check_point(const Vec& x) const {
  if (!geometry_.contains(x)) throw std::domain_error("point outside domain closure");
}

CMat CoefficientField::A(const Vec& x) const {
  check_point(x);
  const int d = dimension();
  switch (source_) {
    case FieldSource::Constant:
      return const_A_;
    case FieldSource::RadialPolar: {
      const double r = x.norm();
      CMat A = CMat::Identity(2, 2);
      if (r < 1e-14) return A;
      const double a = profile_(r);
      const double c = x[0] / r, s = x[1] / r;
      const double off = c * s * (1.0 - a);
      A(0, 0) = c * c + a * s * s;
      A(0, 1) = off;
      A(1, 0) = off;
      A(1, 1) = s * s + a * c * c;
      return A;
    }
    case FieldSource::Expression: {
      std::map<std::string, Complex> b;
      b["x1"] = x[0];
      b["x2"] = x[1];
      if (d == 3) b["x3"] = x[2];
      b["r"] = x.norm();
      CMat A(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
          const Complex v = expr::eval(a_exprs_[i][j - i], b);
          A(i, j) = v;
          A(j, i) = v;
        }
      return A;
    }
  }
  throw std::logic_error("unreachable");
}

Complex CoefficientField::n(const Vec& x) const {
  check_point(x);
  if (!n_is_expr_) return n_scale_ * const_n_;
  std::map<std::string, Complex> b;
  b["x1"] = x[0];
  b["x2"] = x[1];
  if (dimension() == 3) b["x3"] = x[2];
  b["r"] = x.norm();
  return n_scale_ * expr::eval(n_expr_, b);
}

double CoefficientField::profile(double r) const {
  if (source_ != FieldSource::RadialPolar)
    throw std::logic_error("profile() applies to radial-polar fields only");
  return profile_(r);
}

std::pair<CMat, Complex> eval_field(const CoefficientField& field, const Vec& point) {
  return {field.A(point), field.n(point)};
}

}  // namespace itp
