#ifndef ITP_FIELDS_HPP
#define ITP_FIELDS_HPP

#include <functional>
#include <utility>
#include <vector>

#include "itp/expr.hpp"
#include "itp/geometry.hpp"

namespace itp {

enum class FieldSource { Constant, RadialPolar, Expression };

/// The coefficient pair (A(x), n(x)) over a domain closure.  A(x) is
/// complex symmetric by construction; evaluation outside the closure is a
/// domain error.  Immutable after construction and safe to share.
class CoefficientField {
 public:
  static CoefficientField constant(DomainGeometry g, const CMat& A, Complex n);

  /// Disk family behind Example-2-style operators:
  ///   A(x) = alpha * (e_r e_r^T + a(r) e_phi e_phi^T),
  /// with a == 1 on [0, match_radius] so A is smooth through the origin.
  /// The default profile ramps from 1 to a1 with a C^2 quintic step.
  static CoefficientField example2(DomainGeometry disk, double a1, Complex n = 1.0,
                                   double match_radius = 0.5);
  static CoefficientField example2(DomainGeometry disk, double a1, expr::Ast n_expr,
                                   double match_radius = 0.5);
  static CoefficientField radial_polar(DomainGeometry disk, std::function<double(double)> profile,
                                       Complex n = 1.0, double match_radius = 0.5);

  /// Entries as parsed expressions in x1,x2[,x3],r; only the upper triangle
  /// is read, the lower one mirrors it exactly.
  static CoefficientField expressions(DomainGeometry g,
                                      std::vector<std::vector<expr::Ast>> a_upper,
                                      expr::Ast n_expr);

  int dimension() const { return geometry_.dimension(); }
  FieldSource source() const { return source_; }
  const DomainGeometry& geometry() const { return geometry_; }
  bool is_constant() const { return source_ == FieldSource::Constant; }

  /// Multiplies n(x) by s (used to fold a spectral scaling c into n).
  CoefficientField with_n_scale(Complex s) const;

  CMat A(const Vec& x) const;
  Complex n(const Vec& x) const;

  /// Example-2 profile access (RadialPolar source only).
  double profile(double r) const;
  double match_radius() const { return match_radius_; }
  double profile_a1() const { return a1_; }

 private:
  CoefficientField() = default;
  void check_point(const Vec& x) const;

  DomainGeometry geometry_ = DomainGeometry::disk(1.0);
  FieldSource source_ = FieldSource::Constant;
  CMat const_A_;
  Complex const_n_ = 1.0;
  Complex n_scale_ = 1.0;
  std::function<double(double)> profile_;
  double match_radius_ = 0.5;
  double a1_ = 1.0;
  std::vector<std::vector<expr::Ast>> a_exprs_;  // upper triangle, row i has d-i entries
  expr::Ast n_expr_;
  bool n_is_expr_ = false;
};

/// (A(point), n(point)) with the closure check.
std::pair<CMat, Complex> eval_field(const CoefficientField& field, const Vec& point);

}  // namespace itp

#endif
