#ifndef ITP_COMMANDS_HPP
#define ITP_COMMANDS_HPP

#include <string>
#include <vector>

#include "itp/config.hpp"

namespace itp {

/// Exit codes: 0 = positive verdict / success, 2 = negative verdict,
/// 1 = usage or IO failure (raised as exceptions, mapped by the CLI).
struct Artifact {
  std::string filename;
  std::string content;
};

struct Report {
  int exit_code = 0;
  std::string text;           // human-readable; byte-stable across reruns
  nlohmann::json data;        // the same content for --format json
  std::vector<Artifact> artifacts;  // CSV files, written by the caller
};

Report cmd_check_ellipticity(const ProblemSpec& spec);
Report cmd_check_sl(const ProblemSpec& spec);
Report cmd_find_rays(const ProblemSpec& spec);
Report cmd_spectrum(const ProblemSpec& spec);

/// Built-in reproduction of the two counterexample constructions (the
/// diag(1,2,3) cube and the a(1)=2 disk); needs no config.
Report cmd_validate_examples();

}  // namespace itp

#endif
