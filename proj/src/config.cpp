#include "itp/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace itp {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw std::invalid_argument("config: " + path + ": " + msg);
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

Complex get_complex(const json& j, const std::string& path) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  fail(path, "expected a number or [re, im]");
}

std::string entry_to_expr(const json& j, const std::string& path) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
    return buf;
  }
  fail(path, "expected an expression string or a number");
}

void check_expression(const std::string& text, const std::string& path) {
  try {
    expr::parse(text);
  } catch (const expr::ParseError& e) {
    fail(path, e.what());
  }
}

}  // namespace

ProblemSpec parse_spec(const json& j) {
  if (!j.is_object()) fail("$", "config root must be an object");
  for (auto& [key, _] : j.items())
    if (key != "geometry" && key != "dimension" && key != "coefficients" && key != "analysis")
      fail(key, "unknown top-level key");

  ProblemSpec spec;

  if (!j.contains("geometry") || !j["geometry"].is_object())
    fail("geometry", "required object");
  const json& g = j["geometry"];
  const std::string kind = g.value("kind", "");
  if (kind == "disk") {
    spec.geometry = DomainGeometry::disk(get_number(g.value("radius", json(1.0)), "geometry.radius"));
  } else if (kind == "annulus") {
    if (!g.contains("rIn") || !g.contains("rOut")) fail("geometry", "annulus needs rIn and rOut");
    spec.geometry = DomainGeometry::annulus(get_number(g["rIn"], "geometry.rIn"),
                                            get_number(g["rOut"], "geometry.rOut"));
  } else if (kind == "cube") {
    spec.geometry = DomainGeometry::cube(get_number(g.value("side", json(1.0)), "geometry.side"));
  } else {
    fail("geometry.kind", "expected one of disk, annulus, cube");
  }
  spec.dimension = spec.geometry.dimension();
  if (j.contains("dimension")) {
    const int d = get_int(j["dimension"], "dimension");
    if (d != spec.dimension)
      fail("dimension", "inconsistent with geometry '" + kind + "' (expected " +
                            std::to_string(spec.dimension) + ")");
  }

  if (!j.contains("coefficients") || !j["coefficients"].is_object())
    fail("coefficients", "required object");
  const json& co = j["coefficients"];
  CoefficientSpec& cs = spec.coefficients;
  const int d = spec.dimension;

  if (co.contains("family")) {
    if (co["family"] != "example2") fail("coefficients.family", "unknown family");
    if (d != 2) fail("coefficients.family", "example2 lives on 2d disks");
    if (co.contains("A")) fail("coefficients", "give either a family or an A table, not both");
    cs.kind = CoefficientSpec::Kind::Example2;
    cs.a1 = get_number(co.value("a1", json(2.0)), "coefficients.a1");
    if (!(cs.a1 > 0)) fail("coefficients.a1", "must be positive");
  } else if (co.contains("A")) {
    cs.kind = CoefficientSpec::Kind::Matrix;
    const json& A = co["A"];
    if (!A.is_array() || static_cast<int>(A.size()) != d)
      fail("coefficients.A", "expected " + std::to_string(d) + " rows");
    std::vector<std::vector<std::string>> table(d, std::vector<std::string>(d));
    std::vector<std::vector<bool>> given(d, std::vector<bool>(d, false));
    for (int i = 0; i < d; ++i) {
      const json& row = A[i];
      const std::string rp = "coefficients.A[" + std::to_string(i) + "]";
      if (!row.is_array()) fail(rp, "expected a row array");
      const int len = static_cast<int>(row.size());
      // a full row, or an upper-packed row starting at the diagonal
      const bool packed = len == d - i && len != d;
      if (len != d && !packed) fail(rp, "row must have d entries (nulls below the diagonal) or the entries from the diagonal rightward");
      for (int c = 0; c < len; ++c) {
        const int jcol = packed ? i + c : c;
        const std::string ep = rp + "[" + std::to_string(c) + "]";
        if (row[c].is_null()) continue;  // mirrored later
        table[i][jcol] = entry_to_expr(row[c], ep);
        given[i][jcol] = true;
      }
    }
    for (int i = 0; i < d; ++i)
      for (int c = 0; c < d; ++c) {
        if (i == c && !given[i][c]) fail("coefficients.A", "missing diagonal entry");
        if (i < c) {
          if (!given[i][c]) fail("coefficients.A", "missing upper-triangle entry");
          if (given[c][i] && table[c][i] != table[i][c])
            fail("coefficients.A", "asymmetric entries at (" + std::to_string(c) + "," +
                                        std::to_string(i) + ")");
          table[c][i] = table[i][c];  // mirror
        }
      }
    for (int i = 0; i < d; ++i)
      for (int c = 0; c < d; ++c)
        check_expression(table[i][c], "coefficients.A[" + std::to_string(i) + "][" +
                                          std::to_string(c) + "]");
    cs.a_entries = std::move(table);
  } else {
    fail("coefficients", "needs a family or an A table");
  }

  if (co.contains("n")) cs.n_expr = entry_to_expr(co["n"], "coefficients.n");
  check_expression(cs.n_expr, "coefficients.n");
  if (co.contains("cScale")) cs.c_scale = get_complex(co["cScale"], "coefficients.cScale");

  if (j.contains("analysis")) {
    const json& an = j["analysis"];
    if (!an.is_object()) fail("analysis", "expected an object");
    AnalysisOptions& a = spec.analysis;
    if (an.contains("resolution")) a.resolution = get_int(an["resolution"], "analysis.resolution");
    if (a.resolution < 2) fail("analysis.resolution", "must be >= 2");
    if (an.contains("tolerance")) a.tolerance = get_number(an["tolerance"], "analysis.tolerance");
    if (!(a.tolerance > 0)) fail("analysis.tolerance", "must be positive");
    if (an.contains("phiGrid")) a.phi_grid = get_int(an["phiGrid"], "analysis.phiGrid");
    if (a.phi_grid < 1) fail("analysis.phiGrid", "must be >= 1");
    if (an.contains("tauResolution"))
      a.tau_resolution = get_int(an["tauResolution"], "analysis.tauResolution");
    if (a.tau_resolution < 360) fail("analysis.tauResolution", "must be >= 360");
    if (an.contains("rectangle")) {
      const json& r = an["rectangle"];
      if (!r.is_array() || r.size() != 4) fail("analysis.rectangle", "expected [re0,re1,im0,im1]");
      a.rectangle = {get_number(r[0], "analysis.rectangle[0]"),
                     get_number(r[1], "analysis.rectangle[1]"),
                     get_number(r[2], "analysis.rectangle[2]"),
                     get_number(r[3], "analysis.rectangle[3]")};
      if (!(a.rectangle.width() > 0) || !(a.rectangle.height() > 0))
        fail("analysis.rectangle", "must have positive width and height");
    }
    if (an.contains("modes")) {
      a.modes.clear();
      for (std::size_t i = 0; i < an["modes"].size(); ++i) {
        const int m = get_int(an["modes"][i], "analysis.modes[" + std::to_string(i) + "]");
        if (m < 0) fail("analysis.modes", "modes must be nonnegative");
        a.modes.push_back(m);
      }
      if (a.modes.empty()) fail("analysis.modes", "must not be empty");
    }
    if (an.contains("cScan")) {
      for (std::size_t i = 0; i < an["cScan"].size(); ++i)
        a.c_scan.push_back(get_complex(an["cScan"][i], "analysis.cScan[" + std::to_string(i) + "]"));
    }
    if (an.contains("epsilonImag"))
      a.epsilon_imag = get_number(an["epsilonImag"], "analysis.epsilonImag");
    if (an.contains("minGapDegrees"))
      a.min_gap_degrees = get_number(an["minGapDegrees"], "analysis.minGapDegrees");
    if (an.contains("odeTolerance"))
      a.ode_tolerance = get_number(an["odeTolerance"], "analysis.odeTolerance");
    if (!(a.ode_tolerance > 0)) fail("analysis.odeTolerance", "must be positive");
    if (an.contains("contourPoints"))
      a.contour_points = get_int(an["contourPoints"], "analysis.contourPoints");
    if (a.contour_points < 4) fail("analysis.contourPoints", "must be >= 4");
  }
  return spec;
}

ProblemSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config: " + path + ": " + e.what());
  }
  return parse_spec(j);
}

json to_json(const ProblemSpec& spec) {
  json g;
  switch (spec.geometry.kind()) {
    case GeometryKind::Disk:
      g = {{"kind", "disk"}, {"radius", spec.geometry.radius()}};
      break;
    case GeometryKind::Annulus:
      g = {{"kind", "annulus"},
           {"rIn", spec.geometry.inner_radius()},
           {"rOut", spec.geometry.outer_radius()}};
      break;
    case GeometryKind::Cube:
      g = {{"kind", "cube"}, {"side", spec.geometry.side()}};
      break;
    case GeometryKind::Parametrized2d:
      g = {{"kind", "parametrized2d"}};
      break;
  }
  json co;
  if (spec.coefficients.kind == CoefficientSpec::Kind::Example2) {
    co["family"] = "example2";
    co["a1"] = spec.coefficients.a1;
  } else {
    co["A"] = spec.coefficients.a_entries;
  }
  co["n"] = spec.coefficients.n_expr;
  co["cScale"] = {spec.coefficients.c_scale.real(), spec.coefficients.c_scale.imag()};

  const AnalysisOptions& a = spec.analysis;
  json an{{"resolution", a.resolution},
          {"tolerance", a.tolerance},
          {"phiGrid", a.phi_grid},
          {"tauResolution", a.tau_resolution},
          {"rectangle", {a.rectangle.re0, a.rectangle.re1, a.rectangle.im0, a.rectangle.im1}},
          {"modes", a.modes},
          {"epsilonImag", a.epsilon_imag},
          {"minGapDegrees", a.min_gap_degrees},
          {"odeTolerance", a.ode_tolerance},
          {"contourPoints", a.contour_points}};
  if (!a.c_scan.empty()) {
    json cl = json::array();
    for (const Complex& c : a.c_scan) cl.push_back({c.real(), c.imag()});
    an["cScan"] = cl;
  }
  return json{{"geometry", g},
              {"dimension", spec.dimension},
              {"coefficients", co},
              {"analysis", an}};
}

std::string config_hash(const ProblemSpec& spec) {
  const std::string dump = to_json(spec).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

/// Constant-fold an expression; nullopt when it references variables.
std::optional<Complex> fold_constant(const std::string& text) {
  try {
    return expr::eval(expr::parse(text), {});
  } catch (const expr::EvalError&) {
    return std::nullopt;
  }
}

}  // namespace

CoefficientField make_field(const ProblemSpec& spec) {
  const CoefficientSpec& cs = spec.coefficients;
  const int d = spec.dimension;
  CoefficientField field = [&] {
    if (cs.kind == CoefficientSpec::Kind::Example2) {
      if (const auto n0 = fold_constant(cs.n_expr))
        return CoefficientField::example2(spec.geometry, cs.a1, *n0);
      return CoefficientField::example2(spec.geometry, cs.a1, expr::parse(cs.n_expr));
    }
    std::vector<std::vector<expr::Ast>> upper(d);
    for (int i = 0; i < d; ++i)
      for (int c = i; c < d; ++c) upper[i].push_back(expr::parse(cs.a_entries[i][c]));
    return CoefficientField::expressions(spec.geometry, std::move(upper),
                                         expr::parse(cs.n_expr));
  }();
  return field.with_n_scale(cs.c_scale);
}

GridResolution grid_resolution(const ProblemSpec& spec) {
  return GridResolution::scaled(spec.geometry, spec.analysis.resolution);
}

RadialProblem make_radial(const ProblemSpec& spec, int mode, std::optional<Complex> c_override) {
  if (spec.geometry.kind() != GeometryKind::Disk)
    throw std::invalid_argument("spectrum requires a disk geometry");
  const CoefficientSpec& cs = spec.coefficients;
  const Complex c = c_override.value_or(cs.c_scale);

  const std::optional<Complex> n0 = fold_constant(cs.n_expr);
  if (!n0) throw std::invalid_argument("spectrum requires a constant n");
  if (std::abs(*n0) == 0.0) throw std::invalid_argument("spectrum requires n != 0");

  RadialProblem p;
  if (cs.kind == CoefficientSpec::Kind::Example2) {
    p = RadialProblem::example2(cs.a1, mode, c * *n0, spec.geometry.radius());
  } else {
    // constant isotropic A = alpha I reduces to the radial family with
    // effective c/alpha and co-normal factor alpha
    const int d = spec.dimension;
    Complex alpha = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const std::optional<Complex> e = fold_constant(cs.a_entries[i][j]);
        if (!e) throw std::invalid_argument("spectrum requires a constant coefficient matrix");
        if (i == j) {
          if (i == 0)
            alpha = *e;
          else if (std::abs(*e - alpha) > 1e-12 * (1.0 + std::abs(alpha)))
            throw std::invalid_argument("spectrum requires an isotropic matrix A = alpha I");
        } else if (std::abs(*e) > 1e-12) {
          throw std::invalid_argument("spectrum requires an isotropic matrix A = alpha I");
        }
      }
    if (std::abs(alpha.imag()) > 1e-12 || alpha.real() <= 0.0)
      throw std::invalid_argument("spectrum requires a real positive isotropic scale");
    p = RadialProblem::isotropic(alpha.real(), mode, c * *n0, spec.geometry.radius());
  }
  p.ode_tol = spec.analysis.ode_tolerance;
  return p;
}

}  // namespace itp
