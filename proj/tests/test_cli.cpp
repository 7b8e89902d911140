#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "irlc/config.hpp"
#include "irlc/errors.hpp"
#include "irlc/runner.hpp"

using namespace irlc;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int config_error_line(const std::string& text) {
  try {
    config::parse(text);
  } catch (const ConfigError& e) {
    return e.line;
  }
  return -1;
}

std::string config_error(const std::string& text) {
  try {
    config::parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

fs::path scratch(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("irlc-test-" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

int run_cli(const std::string& args, const fs::path& out = {}) {
  const std::string cmd = std::string(IRLC_CLI) + " " + args + (out.empty() ? "" : " > " + out.string() + " 2>&1");
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}
}  // namespace

TEST_CASE("bundled config parses with canonical study order") {
  const auto c = config::load(IRLC_DEFAULT_CONFIG);
  REQUIRE(c.studies.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) CHECK(c.studies[i].name == config::study_names()[i]);
  CHECK(c.fields.count("forward_probe") == 1);
  CHECK(c.profile.time_shift == 2.0);
  CHECK(config::defaults_yaml() == slurp(IRLC_DEFAULT_CONFIG));
}

TEST_CASE("study order is canonical whatever the file order") {
  const auto c = config::parse("studies:\n  - name: locality\n  - name: ir-divergence\n");
  REQUIRE(c.studies.size() == 2);
  CHECK(c.studies[0].name == "ir-divergence");
  CHECK(c.studies[1].name == "locality");
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(config_error_line("profile:\n  coupling: 0.01\n  velocity: [0, 0, 1.0]\n") == 3);
  CHECK(config_error("profile:\n  velocity: [0, 0, 1.0]\n").find("v_max") != std::string::npos);
  CHECK(config_error_line("profile:\n  coupling: 0.01\n  colour: red\n") == 3);
  CHECK(config_error_line("studies:\n  - name: huyghens\n    field: nowhere\n") == 3);
  CHECK(config_error_line("studies:\n  - name: locality\n  - name: nonsense\n") == 3);
  CHECK(config_error_line("studies:\n  - name: locality\n  - name: locality\n") == 3);
  CHECK(config_error_line("profile: [1, 2\n") > 0);
  CHECK(config_error_line("quadrature:\n  radial:\n    r_min: -1\n") == 3);
}

TEST_CASE("empty study list runs cleanly") {
  const auto c = config::parse("studies: []\n");
  CHECK(c.studies.empty());
  const auto r = runner::run_studies(c);
  CHECK(r.pass());
  CHECK(runner::to_json(r)["studies"].empty());
  CHECK(config::parse("").studies.empty());
}

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, 1.0 / 3, 1e-300, 123456789.125, -2.5e-7}) CHECK(std::stod(runner::fmt(v)) == v);
  CHECK(runner::fmt(3) == "3");
  CHECK(runner::fmt(NAN) == "nan");
}

TEST_CASE("limit-T table schema and region outline") {
  auto c = config::parse(
      "test_fields:\n"
      "  f:\n"
      "    support: {center: [5, 0, 0, 0], radius: 1}\n"
      "    terms:\n"
      "      - channel: electric\n"
      "        direction: [0.3, 0, 1]\n"
      "        time: {center: 5, halfwidth: 0.45, amplitude: 1}\n"
      "        space: {kind: radial, center: [0, 0, 0], radius: 0.45}\n"
      "studies:\n"
      "  - name: limit-T\n"
      "    field: f\n"
      "    T_list: [1]\n"
      "    region_T: [3]\n");
  const auto r = runner::run_studies(c);
  REQUIRE(r.studies.size() == 1);
  const auto& s = r.studies[0];
  CHECK(s.error.empty());
  REQUIRE(s.tables.size() == 2);
  CHECK(s.tables[0].file == "limit-T.csv");
  std::string header;
  for (const auto& h : s.tables[0].columns) header += (header.empty() ? "" : ",") + h;
  CHECK(header == "T,total_re,total_im,vhat_re,vhat_im,term2_abs,term3_abs,err");
  // the window holds no rows here, so the boundedness check cannot pass
  CHECK_FALSE(s.find("T|term3| spread")->pass);

  const auto& reg = s.tables[1];
  CHECK(reg.file == "limit-T_region.csv");
  REQUIRE(reg.rows.size() == 4);
  const std::vector<std::pair<std::string, std::string>> expect{{"0", "0"}, {"0", "3"}, {"3", "3"}, {"0", "0"}};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(reg.rows[i][0] == "3");
    CHECK(reg.rows[i][1] == "2");
    CHECK(reg.rows[i][2] == expect[i].first);
    CHECK(reg.rows[i][3] == expect[i].second);
  }

  const auto dir = scratch("limit");
  runner::write_outputs(r, dir);
  CHECK(slurp(dir / "limit-T.csv").rfind("T,total_re,total_im,vhat_re,vhat_im,term2_abs,term3_abs,err\n", 0) == 0);
  CHECK(slurp(dir / "limit-T_region.csv") == "T,u,t,tau\n3,2,0,0\n3,2,0,3\n3,2,3,3\n3,2,0,0\n");
}

TEST_CASE("ir-divergence table schema") {
  auto c = config::parse("studies:\n  - name: ir-divergence\n    velocities: [[0, 0, 0.1]]\n");
  const auto r = runner::run_studies(c);
  REQUIRE(r.studies.size() == 1);
  CHECK(r.pass());
  const auto& t = r.studies[0].tables[0];
  CHECK(t.columns == std::vector<std::string>{"sigma_lo", "shell_norm", "err"});
  CHECK(t.rows.size() == 5);
}

TEST_CASE("numerical failures are recorded per study") {
  // g0 = 2 is a valid parameter set but the normalized studies refuse it
  auto c = config::parse("profile:\n  g0: 2\nstudies:\n  - name: difference-norm\n  - name: ir-divergence\n");
  const auto r = runner::run_studies(c);
  REQUIRE(r.studies.size() == 2);
  CHECK_FALSE(r.studies[0].error.empty());
  CHECK_FALSE(r.pass());
}

TEST_CASE("command line") {
  const auto dir = scratch("cli");
  CHECK(run_cli("list-studies", dir / "list.txt") == 0);
  CHECK(slurp(dir / "list.txt") ==
        "ir-divergence\nsuperselection-slope\ndifference-norm\nhuyghens\nlimit-T\nweyl-laws\nlocality\nwave-appendix\n");
  CHECK(run_cli("emit-defaults", dir / "defaults.yaml") == 0);
  CHECK(slurp(dir / "defaults.yaml") == slurp(IRLC_DEFAULT_CONFIG));

  std::ofstream(dir / "bad.yaml") << "profile:\n  coupling: 0.01\n  velocity: [1.0, 0, 0]\n";
  CHECK(run_cli((dir / "bad.yaml").string(), dir / "err0.txt") != 0);  // missing subcommand
  CHECK(run_cli("run " + (dir / "bad.yaml").string(), dir / "err.txt") == 2);
  const auto msg = slurp(dir / "err.txt");
  CHECK(msg.find("bad.yaml:3:") != std::string::npos);
  CHECK(msg.find("v_max") != std::string::npos);

  std::ofstream(dir / "empty.yaml") << "output_dir: " << (dir / "ignored").string() << "\nstudies: []\n";
  setenv("IRLC_OUTPUT_DIR", (dir / "out").string().c_str(), 1);
  CHECK(run_cli("run -q " + (dir / "empty.yaml").string()) == 0);
  unsetenv("IRLC_OUTPUT_DIR");
  CHECK(fs::exists(dir / "out" / "report.json"));
  CHECK_FALSE(fs::exists(dir / "ignored"));
}
