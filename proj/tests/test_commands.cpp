#include <doctest.h>

#include <algorithm>

#include "itp/commands.hpp"

using namespace itp;
using nlohmann::json;

namespace {

ProblemSpec disk_spec(json coefficients) {
  json j = {{"geometry", {{"kind", "disk"}, {"radius", 1.0}}},
            {"coefficients", std::move(coefficients)},
            {"analysis", {{"resolution", 8}, {"phiGrid", 36}}}};
  return parse_spec(j);
}

}  // namespace

TEST_CASE("ellipticity command exit codes") {
  const Report ok = cmd_check_ellipticity(disk_spec({{"A", {{"1", "0"}, {"1"}}}}));
  CHECK(ok.exit_code == 0);
  CHECK(ok.text.find("verdict: elliptic") != std::string::npos);

  const Report bad = cmd_check_ellipticity(disk_spec({{"A", {{"1", "0"}, {"0-1"}}}}));
  CHECK(bad.exit_code == 2);
  CHECK(bad.text.find("not elliptic") != std::string::npos);
}

TEST_CASE("sl command emits margins with the config hash") {
  ProblemSpec spec = disk_spec({{"family", "example2"}, {"a1", 2.0}});
  const Report rep = cmd_check_sl(spec);
  CHECK(rep.exit_code == 0);
  REQUIRE(rep.artifacts.size() == 1);
  CHECK(rep.artifacts[0].filename == "sl_margins.csv");
  CHECK(rep.artifacts[0].content.find(config_hash(spec)) != std::string::npos);
  CHECK(rep.artifacts[0].content.find("detB_margin") != std::string::npos);
  // one CSV row per frame plus the two header lines
  const std::size_t rows = std::count(rep.artifacts[0].content.begin(),
                                      rep.artifacts[0].content.end(), '\n');
  CHECK(rows == 2 + 8 * 15);  // resolution 8 -> 120 boundary frames

  const Report fail = cmd_check_sl(disk_spec({{"A", {{"1", "0"}, {"1"}}}}));
  CHECK(fail.exit_code == 2);
}

TEST_CASE("find-rays reports the corollary case") {
  const Report rep = cmd_find_rays(disk_spec({{"A", {{"2", "0"}, {"2"}}}}));
  CHECK(rep.exit_code == 0);
  CHECK(rep.text.find("case: 1") != std::string::npos);
  REQUIRE(!rep.artifacts.empty());
  CHECK(rep.artifacts[0].filename == "ray_margins.csv");

  const Report empty = cmd_find_rays(disk_spec({{"family", "example2"}, {"a1", 2.0}}));
  CHECK(empty.exit_code == 2);  // n = 1 blocks every ray
}

TEST_CASE("spectrum command handles both identically-zero and discrete modes") {
  json j = {{"geometry", {{"kind", "disk"}, {"radius", 1.0}}},
            {"coefficients", {{"family", "example2"}, {"a1", 2.0}}},
            {"analysis", {{"modes", {0}}, {"cScan", {{1.0, 0.0}, {2.0, 0.0}}}}}};
  const Report rep = cmd_spectrum(parse_spec(j));
  CHECK(rep.exit_code == 0);
  CHECK(rep.text.find("identically zero") != std::string::npos);
  CHECK(rep.text.find("c = 2+0i: 1 zero(s)") != std::string::npos);
  CHECK(rep.artifacts.size() == 2);

  // non-radial specs are a usage error
  json cube = {{"geometry", {{"kind", "cube"}, {"side", 1.0}}},
               {"coefficients", {{"A", {{"1", "0", "0"}, {"2", "0"}, {"3"}}}}}};
  CHECK_THROWS_AS(cmd_spectrum(parse_spec(cube)), std::invalid_argument);
}

TEST_CASE("reports are byte-stable across reruns") {
  ProblemSpec spec = disk_spec({{"family", "example2"}, {"a1", 2.0}});
  const Report a = cmd_check_sl(spec);
  const Report b = cmd_check_sl(spec);
  CHECK(a.text == b.text);
  REQUIRE(a.artifacts.size() == b.artifacts.size());
  CHECK(a.artifacts[0].content == b.artifacts[0].content);

  const Report ra = cmd_find_rays(spec);
  const Report rb = cmd_find_rays(spec);
  CHECK(ra.text == rb.text);
  CHECK(ra.artifacts[0].content == rb.artifacts[0].content);
}

TEST_CASE("validate-examples passes end to end") {
  const Report rep = cmd_validate_examples();
  CHECK(rep.exit_code == 0);
  CHECK(rep.text.find("FAIL") == std::string::npos);
}
