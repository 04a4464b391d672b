#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "itp/commands.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::string output_dir;
  std::string format = "text";
  int resolution = 0;
  double tolerance = 0.0;
  int phi_grid = 0;
  std::vector<double> rect;
};

void apply_overrides(itp::ProblemSpec& spec, const CliOptions& opt) {
  if (opt.resolution > 0) spec.analysis.resolution = opt.resolution;
  if (opt.tolerance > 0) spec.analysis.tolerance = opt.tolerance;
  if (opt.phi_grid > 0) spec.analysis.phi_grid = opt.phi_grid;
  if (!opt.rect.empty()) {
    if (opt.rect.size() != 4) throw std::invalid_argument("--rect expects a,b,c,d");
    spec.analysis.rectangle = {opt.rect[0], opt.rect[1], opt.rect[2], opt.rect[3]};
  }
}

int emit(const itp::Report& rep, const CliOptions& opt,
         std::chrono::steady_clock::time_point start) {
  if (opt.format == "json")
    std::cout << rep.data.dump(2) << "\n";
  else
    std::cout << rep.text;
  if (!opt.output_dir.empty()) {
    std::filesystem::create_directories(opt.output_dir);
    for (const itp::Artifact& a : rep.artifacts) {
      std::ofstream out(std::filesystem::path(opt.output_dir) / a.filename);
      if (!out) throw std::runtime_error("cannot write artifact " + a.filename);
      out << a.content;
    }
  }
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  std::cerr << "elapsed_ms=" << elapsed.count() << "\n";  // timing stays off stdout
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ellipticity, parameter-ellipticity and transmission-eigenvalue analysis "
               "for anisotropic interior transmission problems"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  CliOptions opt;
  app.add_option("--output", opt.output_dir, "directory for CSV artifacts");
  app.add_option("--format", opt.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--resolution", opt.resolution, "grid density knob");
  app.add_option("--tolerance", opt.tolerance, "margin tolerance");
  app.add_option("--phi-grid", opt.phi_grid, "ray scan resolution");
  app.add_option("--rect", opt.rect, "search rectangle re0,re1,im0,im1")->delimiter(',');

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "problem config (JSON)")->required();
  };
  CLI::App* ell = app.add_subcommand("check-ellipticity", "decide ellipticity of A(x)");
  add_config(ell);
  CLI::App* sl = app.add_subcommand("check-sl", "check the boundary-condition (Shapiro-Lopatinskii) margins");
  add_config(sl);
  CLI::App* rays = app.add_subcommand("find-rays", "scan rays for parameter-ellipticity margins");
  add_config(rays);
  CLI::App* spec_cmd = app.add_subcommand("spectrum", "count transmission eigenvalues on the disk");
  add_config(spec_cmd);
  app.add_subcommand("validate-examples", "reproduce the built-in counterexamples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;  // usage errors map to exit 1
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    itp::Report rep;
    if (app.got_subcommand("validate-examples")) {
      rep = itp::cmd_validate_examples();
    } else {
      itp::ProblemSpec spec = itp::load_spec(opt.config_path);
      apply_overrides(spec, opt);
      if (app.got_subcommand("check-ellipticity")) rep = itp::cmd_check_ellipticity(spec);
      else if (app.got_subcommand("check-sl")) rep = itp::cmd_check_sl(spec);
      else if (app.got_subcommand("find-rays")) rep = itp::cmd_find_rays(spec);
      else if (app.got_subcommand("spectrum")) rep = itp::cmd_spectrum(spec);
    }
    return emit(rep, opt, start);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
