#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "slocc/run.hpp"

using namespace slocc;
using nlohmann::json;

namespace {

const char* kPointConfig = R"({
  "statistics": "boson",
  "psi": {"L": [0.894427190999916, 0.0], "R": [0.447213595499958, 0.0]},
  "psi_prime": {"L": [0.447213595499958, 0.0], "R": [0.894427190999916, 0.0]}
})";

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::string run_entanglement(const RunConfig& config) {
  std::ostringstream out, err;
  REQUIRE(cmd_entanglement(config, out, err) == kExitOk);
  return out.str();
}

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("defaults") {
    const auto config = RunConfig::from_json_text("{}");
    CHECK(config.statistics == Statistics::Boson);
    CHECK(config.regions.left == "L");
    CHECK(config.regions.right == "R");
    CHECK(config.regions.aux == "Lp");
    CHECK(config.format == "csv");
    CHECK(config.seed == 1);
    CHECK(config.trials == 0);
    CHECK_FALSE(config.psi.has_value());
  }
  SUBCASE("full document") {
    const auto config = RunConfig::from_json_text(R"({
      "statistics": "fermion",
      "regions": {"left": "A", "right": "B", "aux": "C"},
      "psi": {"A": [0.6, 0.0], "B": [0.0, 0.8]},
      "input_spinor": {"a": [0.6, 0.0], "b": [0.0, 0.8]},
      "sweep": {"parameter": "theta_mirror", "start": 0.0, "stop": 1.0, "steps": 5},
      "trials": 100, "seed": 7, "format": "json", "oracle_cases": 10
    })");
    CHECK(config.statistics == Statistics::Fermion);
    CHECK(config.regions.left == "A");
    CHECK(config.regions.aux == "C");
    REQUIRE(config.psi.has_value());
    CHECK(std::abs(config.psi->amplitude("B") - Complex(0.0, 0.8)) < 1e-15);
    CHECK(std::abs(config.spinor_b - Complex(0.0, 0.8)) < 1e-15);
    REQUIRE(config.sweep.has_value());
    CHECK(config.sweep->parameter == "theta_mirror");
    CHECK(config.sweep->steps == 5);
    CHECK(config.trials == 100);
    CHECK(config.seed == 7);
    CHECK(config.format == "json");
    CHECK(config.oracle_cases == 10);
  }
  SUBCASE("rejected documents") {
    CHECK_THROWS_AS(RunConfig::from_json_text("not json"), std::domain_error);
    CHECK_THROWS_AS(RunConfig::from_json_text(R"({"statistics": "anyon"})"),
                    std::domain_error);
    CHECK_THROWS_AS(RunConfig::from_json_text(R"({"format": "xml"})"),
                    std::domain_error);
    CHECK_THROWS_AS(RunConfig::from_json_text(R"({"psi": {"L": [1.0]}})"),
                    std::domain_error);
    CHECK_THROWS_AS(RunConfig::from_json_text(R"({"psi": {"L": [0.9, 0.0]}})"),
                    std::domain_error);
    CHECK_THROWS_AS(
        RunConfig::from_json_text(R"({"input_spinor": {"a": [1.0, 0.0], "b": [1.0, 0.0]}})"),
        std::domain_error);
    CHECK_THROWS_AS(RunConfig::from_file("/nonexistent/config.json"),
                    std::domain_error);
  }
}

TEST_CASE("entanglement point run emits the frozen row") {
  const auto config = RunConfig::from_json_text(kPointConfig);
  const auto text = run_entanglement(config);
  const auto lines = split(text, '\n');
  REQUIRE(lines.size() >= 2);
  CHECK(lines[0] ==
        "sweep_param,P_L,P_L_prime,P_R,P_R_prime,P_LR,E_LR,concurrence,E_f,undefined");
  const auto fields = split(lines[1], ',');
  REQUIRE(fields.size() == 10);
  CHECK(std::stod(fields[1]) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(std::stod(fields[2]) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(std::stod(fields[5]) == doctest::Approx(0.68).epsilon(1e-12));
  CHECK(std::stod(fields[6]) == doctest::Approx(0.322756958897398).epsilon(1e-12));
  CHECK(std::stod(fields[7]) == doctest::Approx(8.0 / 17.0).epsilon(1e-12));
  CHECK(std::stod(fields[8]) == doctest::Approx(0.322756958897398).epsilon(1e-12));
  CHECK(fields[9] == "0");
}

TEST_CASE("entanglement output is byte-identical across runs") {
  const auto config = RunConfig::from_json_text(R"({
    "statistics": "fermion",
    "sweep": {"parameter": "theta_mirror", "start": 0.0, "stop": 1.5707963267948966,
              "steps": 21}
  })");
  CHECK(run_entanglement(config) == run_entanglement(config));
}

TEST_CASE("mirror sweep peaks at the balanced point") {
  const auto config = RunConfig::from_json_text(R"({
    "sweep": {"parameter": "theta_mirror", "start": 0.0, "stop": 1.5707963267948966,
              "steps": 3}
  })");
  const auto lines = split(run_entanglement(config), '\n');
  REQUIRE(lines.size() >= 4);
  // Endpoints are the fully separated configurations, the middle is maximal.
  CHECK(std::stod(split(lines[1], ',')[6]) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(std::stod(split(lines[2], ',')[6]) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::stod(split(lines[3], ',')[6]) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("undefined conditional correlations are flagged, not faked") {
  const auto config = RunConfig::from_json_text(R"({
    "psi": {"L": [1.0, 0.0], "R": [0.0, 0.0]},
    "psi_prime": {"L": [1.0, 0.0], "R": [0.0, 0.0]}
  })");
  const auto lines = split(run_entanglement(config), '\n');
  REQUIRE(lines.size() >= 2);
  const auto fields = split(lines[1], ',');
  REQUIRE(fields.size() == 10);
  CHECK(fields[6].empty());
  CHECK(fields[7].empty());
  CHECK(fields[8].empty());
  CHECK(fields[9] == "1");
}

TEST_CASE("entanglement json format carries the same numbers") {
  auto config = RunConfig::from_json_text(kPointConfig);
  config.format = "json";
  std::ostringstream out, err;
  REQUIRE(cmd_entanglement(config, out, err) == kExitOk);
  const json rows = json::parse(out.str());
  REQUIRE(rows.is_array());
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["P_LR"].get<double>() == doctest::Approx(0.68).epsilon(1e-12));
  CHECK(rows[0]["E_LR"].get<double>() ==
        doctest::Approx(0.322756958897398).epsilon(1e-12));
  CHECK(rows[0]["undefined"].get<bool>() == false);
}

TEST_CASE("entanglement usage errors exit with code 1") {
  std::ostringstream out, err;
  CHECK(cmd_entanglement(RunConfig::from_json_text("{}"), out, err) == kExitUsage);
  CHECK(err.str().find("psi") != std::string::npos);

  const auto bad_sweep = RunConfig::from_json_text(R"({
    "sweep": {"parameter": "phi", "start": 0.0, "stop": 1.0, "steps": 2}
  })");
  std::ostringstream out2, err2;
  CHECK(cmd_entanglement(bad_sweep, out2, err2) == kExitUsage);
}

TEST_CASE("teleport report") {
  auto config = RunConfig::from_json_text(R"({
    "statistics": "fermion",
    "input_spinor": {"a": [0.6, 0.0], "b": [0.0, 0.8]},
    "trials": 2000, "seed": 99
  })");
  std::ostringstream out, err;
  REQUIRE(cmd_teleport(config, out, err) == kExitOk);
  const json report = json::parse(out.str());
  const auto& analytic = report.at("analytic");
  CHECK(analytic.at("success_probability").get<double>() ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(analytic.at("total_fidelity").get<double>() ==
        doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  CHECK(analytic.at("classical_threshold").get<double>() ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  REQUIRE(analytic.at("per_outcome").size() == 6);
  for (const auto& o : analytic.at("per_outcome")) {
    const auto outcome = o.at("outcome").get<std::string>();
    if (outcome == "ZeroInL" || outcome == "TwoInL") {
      CHECK(o.at("correction").get<std::string>() == "reject");
    } else {
      CHECK(o.at("fidelity").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  const auto& mc = report.at("monte_carlo");
  CHECK(mc.at("trials").get<std::int64_t>() == 2000);
  CHECK(mc.at("seed").get<std::uint64_t>() == 99);
  std::int64_t total = 0;
  for (const auto& [label, count] : mc.at("outcome_counts").items()) {
    total += count.get<std::int64_t>();
  }
  CHECK(total == 2000);

  // Same config, same bytes.
  std::ostringstream again;
  std::ostringstream err2;
  REQUIRE(cmd_teleport(config, again, err2) == kExitOk);
  CHECK(again.str() == out.str());

  // A different seed moves the counts.
  config.seed = 100;
  std::ostringstream other, err3;
  REQUIRE(cmd_teleport(config, other, err3) == kExitOk);
  CHECK(other.str() != out.str());
}

TEST_CASE("compare-distinguishable table") {
  const auto config = RunConfig::from_json_text(R"({
    "input_spinor": {"a": [0.707106781186548, 0.0], "b": [0.707106781186548, 0.0]},
    "psi": {"L": [0.894427190999916, 0.0], "R": [0.447213595499958, 0.0]},
    "psi_prime": {"L": [0.447213595499958, 0.0], "R": [0.894427190999916, 0.0]}
  })");
  std::ostringstream out, err;
  REQUIRE(cmd_compare_distinguishable(config, out, err) == kExitOk);
  const auto lines = split(out.str(), '\n');
  REQUIRE(lines.size() >= 5);
  CHECK(lines[0] == "mode_A,mode_B,probability,concurrence,identical_particle_C");
  double total = 0.0;
  for (int i = 1; i <= 4; ++i) {
    const auto fields = split(lines[i], ',');
    REQUIRE(fields.size() == 5);
    total += std::stod(fields[2]);
    CHECK(std::stod(fields[3]) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::stod(fields[4]) == doctest::Approx(8.0 / 17.0).epsilon(1e-9));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  std::ostringstream out2, err2;
  CHECK(cmd_compare_distinguishable(RunConfig::from_json_text("{}"), out2, err2) ==
        kExitUsage);
}

TEST_CASE("oracle-check passes and reports per-quantity deviations") {
  auto config = RunConfig::from_json_text(R"({"oracle_cases": 60, "seed": 5})");
  std::ostringstream out, err;
  REQUIRE(cmd_oracle_check(config, out, err) == kExitOk);
  const auto text = out.str();
  CHECK(text.find("overlap max_deviation=") != std::string::npos);
  CHECK(text.find("reduced_matrix max_deviation=") != std::string::npos);
  CHECK(text.find("projection max_deviation=") != std::string::npos);
  CHECK(text.find("teleport_branches max_deviation=") != std::string::npos);
  CHECK(text.find("cases=60 result=PASS") != std::string::npos);
  CHECK(text.find("FAIL") == std::string::npos);
}

TEST_CASE("oracle-check failure path exits with code 2") {
  auto config = RunConfig::from_json_text(
      R"({"oracle_cases": 10, "seed": 5, "inject_error": true})");
  std::ostringstream out, err;
  CHECK(cmd_oracle_check(config, out, err) == kExitNumerical);
  CHECK(out.str().find("result=FAIL") != std::string::npos);
}

TEST_CASE("run_command dispatch and file output") {
  auto config = RunConfig::from_json_text(kPointConfig);
  const auto path = temp_file("slocc_cli_test_output.csv");
  config.output = path.string();
  std::ostringstream fallback, err;
  REQUIRE(run_command("entanglement", config, fallback, err) == kExitOk);
  CHECK(fallback.str().empty());
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream content;
  content << in.rdbuf();
  config.output.clear();
  CHECK(content.str() == run_entanglement(config));
  std::filesystem::remove(path);

  std::ostringstream out2, err2;
  CHECK(run_command("frobnicate", config, out2, err2) == kExitUsage);
}
