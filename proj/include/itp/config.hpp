#ifndef ITP_CONFIG_HPP
#define ITP_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "itp/fields.hpp"
#include "itp/spectra.hpp"

namespace itp {

/// Coefficient description as written in the config: either a named
/// family or a table of expression entries (upper triangle suffices).
struct CoefficientSpec {
  enum class Kind { Matrix, Example2 } kind = Kind::Matrix;
  std::vector<std::vector<std::string>> a_entries;  // full d x d after mirroring
  std::string n_expr = "1";
  double a1 = 2.0;  // Example2 boundary value a(1)
  Complex c_scale = 1.0;
};

struct AnalysisOptions {
  int resolution = 24;        // one-knob grid density
  double tolerance = kDefaultTolerance;
  int phi_grid = 360;
  int tau_resolution = 720;
  Rectangle rectangle{0.5, 8.0, -0.5, 0.5};
  std::vector<int> modes{0, 1};
  std::vector<Complex> c_scan;  // optional Theorem-2 style scan values
  double epsilon_imag = 1e-3;
  double min_gap_degrees = 5.0;
  double ode_tolerance = 1e-11;
  int contour_points = 256;
};

struct ProblemSpec {
  DomainGeometry geometry = DomainGeometry::disk(1.0);
  int dimension = 2;
  CoefficientSpec coefficients;
  AnalysisOptions analysis;
};

/// Parses and validates a config; schema violations carry field paths.
ProblemSpec parse_spec(const nlohmann::json& j);
ProblemSpec load_spec(const std::string& path);

/// Canonical echo with all defaults materialized; parse_spec(to_json(s))
/// reproduces the spec bit for bit.
nlohmann::json to_json(const ProblemSpec& spec);

/// FNV-1a over the canonical dump; stamped into every artifact header.
std::string config_hash(const ProblemSpec& spec);

/// The evaluable field, with c folded into n.
CoefficientField make_field(const ProblemSpec& spec);

GridResolution grid_resolution(const ProblemSpec& spec);

/// Radial reduction for spectrum commands.  Works for the Example2 family
/// and for constant isotropic A = alpha I with constant n; anything else
/// is an error.
RadialProblem make_radial(const ProblemSpec& spec, int mode,
                          std::optional<Complex> c_override = std::nullopt);

}  // namespace itp

#endif
