#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "slocc/states.hpp"
#include "slocc/teleport.hpp"

namespace slocc {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

struct SweepSpec {
  std::string parameter;  // theta | theta_prime | theta_both | theta_mirror
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;
};

/// Parsed run configuration. Complex numbers appear in the config document
/// as two-element [re, im] arrays; wavefunctions as region -> [re, im] maps.
struct RunConfig {
  Statistics statistics = Statistics::Boson;
  TeleportRegions regions;
  std::optional<SpatialWavefunction> psi;
  std::optional<SpatialWavefunction> psi_prime;
  Complex spinor_a{1.0, 0.0};
  Complex spinor_b{0.0, 0.0};
  std::optional<SweepSpec> sweep;
  std::int64_t trials = 0;
  std::uint64_t seed = 1;
  std::string output;  // empty = stdout
  std::string format = "csv";
  int oracle_cases = 1000;
  bool inject_error = false;  // test hook for the oracle-check failure path

  static RunConfig from_json_text(const std::string& text);
  static RunConfig from_file(const std::string& path);
};

int cmd_entanglement(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_teleport(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare_distinguishable(const RunConfig& config, std::ostream& out,
                                std::ostream& err);
int cmd_oracle_check(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Dispatches to the output file when configured, else to fallback.
int run_command(const std::string& command, const RunConfig& config,
                std::ostream& fallback_out, std::ostream& err);

}  // namespace slocc
