#include "slocc/run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "slocc/baseline.hpp"
#include "slocc/entanglement.hpp"
#include "slocc/oracle.hpp"

namespace slocc {

namespace {

using nlohmann::json;

Complex parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::domain_error("complex values must be [re, im] arrays");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

SpatialWavefunction parse_wavefunction(const json& j) {
  std::map<Region, Complex> amps;
  for (const auto& [region, value] : j.items()) {
    amps[region] = parse_complex(value);
  }
  // Human-written inputs get a looser normalization tolerance.
  return SpatialWavefunction(std::move(amps), 1e-9);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

/// Builds the two-mode wavefunctions for one sweep point. The sweep runs
/// over theta with l = cos(theta), r = sin(theta), so normalization holds
/// by construction.
std::pair<SpatialWavefunction, SpatialWavefunction> sweep_point(
    const RunConfig& config, double theta) {
  const auto& p = config.sweep->parameter;
  const Region& L = config.regions.left;
  const Region& R = config.regions.right;
  auto at = [&](double t) {
    return SpatialWavefunction::two_mode(L, R, std::cos(t), std::sin(t));
  };
  auto fixed = [&](const std::optional<SpatialWavefunction>& w, const char* name) {
    if (!w) {
      throw std::domain_error(std::string("sweep over ") + p + " needs a fixed " +
                              name);
    }
    return *w;
  };
  if (p == "theta") return {at(theta), fixed(config.psi_prime, "psi_prime")};
  if (p == "theta_prime") return {fixed(config.psi, "psi"), at(theta)};
  if (p == "theta_both") return {at(theta), at(theta)};
  if (p == "theta_mirror") return {at(theta), at(M_PI / 2.0 - theta)};
  throw std::domain_error("unknown sweep parameter '" + p + "'");
}

struct EntanglementRow {
  double sweep_param;
  double p_l, p_l_prime, p_r, p_r_prime;
  double p_lr = 0.0;
  std::optional<double> e_lr;
  std::optional<double> concurrence;
  std::optional<double> e_f;
};

EntanglementRow evaluate_point(const RunConfig& config, double sweep_param,
                               const SpatialWavefunction& psi,
                               const SpatialWavefunction& psi_prime) {
  const Region& L = config.regions.left;
  const Region& R = config.regions.right;
  EntanglementRow row{};
  row.sweep_param = sweep_param;
  row.p_l = std::norm(psi.amplitude(L));
  row.p_l_prime = std::norm(psi_prime.amplitude(L));
  row.p_r = std::norm(psi.amplitude(R));
  row.p_r_prime = std::norm(psi_prime.amplitude(R));

  const auto state = TwoParticleState::wedge(
      config.statistics, SingleParticleState::product(psi, Spin::Up),
      SingleParticleState::product(psi_prime, Spin::Down));

  const auto projected = project_LR(state, L, R);
  const auto conditioned = condition_on_region(localized_partial_trace(state, L), R);
  if (projected && conditioned) {
    row.p_lr = projected->probability;
    row.e_lr = von_neumann_entropy(*conditioned);
    row.concurrence = concurrence_pure(projected->amplitudes);
    row.e_f = entanglement_of_formation(*row.concurrence);
  }
  return row;
}

std::vector<EntanglementRow> entanglement_rows(const RunConfig& config) {
  std::vector<EntanglementRow> rows;
  if (config.sweep) {
    const SweepSpec& s = *config.sweep;
    if (s.steps < 1) throw std::domain_error("sweep needs at least one step");
    for (int i = 0; i < s.steps; ++i) {
      const double theta =
          s.steps == 1 ? s.start
                       : s.start + (s.stop - s.start) * i / (s.steps - 1);
      const auto [psi, psi_prime] = sweep_point(config, theta);
      rows.push_back(evaluate_point(config, theta, psi, psi_prime));
    }
  } else {
    if (!config.psi || !config.psi_prime) {
      throw std::domain_error("psi and psi_prime are required without a sweep");
    }
    rows.push_back(evaluate_point(config, 0.0, *config.psi, *config.psi_prime));
  }
  return rows;
}

void write_rows_csv(const std::vector<EntanglementRow>& rows, std::ostream& out) {
  out << "sweep_param,P_L,P_L_prime,P_R,P_R_prime,P_LR,E_LR,concurrence,E_f,"
         "undefined\n";
  for (const auto& r : rows) {
    out << fmt(r.sweep_param) << ',' << fmt(r.p_l) << ',' << fmt(r.p_l_prime) << ','
        << fmt(r.p_r) << ',' << fmt(r.p_r_prime) << ',' << fmt(r.p_lr) << ',';
    if (r.e_lr) {
      out << fmt(*r.e_lr) << ',' << fmt(*r.concurrence) << ',' << fmt(*r.e_f)
          << ",0\n";
    } else {
      out << ",,,1\n";
    }
  }
}

void write_rows_json(const std::vector<EntanglementRow>& rows, std::ostream& out) {
  json arr = json::array();
  for (const auto& r : rows) {
    json row{{"sweep_param", r.sweep_param}, {"P_L", r.p_l},
             {"P_L_prime", r.p_l_prime},     {"P_R", r.p_r},
             {"P_R_prime", r.p_r_prime},     {"P_LR", r.p_lr},
             {"undefined", !r.e_lr.has_value()}};
    if (r.e_lr) {
      row["E_LR"] = *r.e_lr;
      row["concurrence"] = *r.concurrence;
      row["E_f"] = *r.e_f;
    }
    arr.push_back(row);
  }
  out << arr.dump(2) << '\n';
}

json spinor_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::domain_error(std::string("config parse error: ") + e.what());
  }
  RunConfig config;
  if (j.contains("statistics")) {
    const auto s = j["statistics"].get<std::string>();
    if (s == "boson") {
      config.statistics = Statistics::Boson;
    } else if (s == "fermion") {
      config.statistics = Statistics::Fermion;
    } else {
      throw std::domain_error("statistics must be 'boson' or 'fermion'");
    }
  }
  if (j.contains("regions")) {
    const auto& r = j["regions"];
    if (r.contains("left")) config.regions.left = r["left"].get<std::string>();
    if (r.contains("right")) config.regions.right = r["right"].get<std::string>();
    if (r.contains("aux")) config.regions.aux = r["aux"].get<std::string>();
  }
  if (j.contains("psi")) config.psi = parse_wavefunction(j["psi"]);
  if (j.contains("psi_prime")) config.psi_prime = parse_wavefunction(j["psi_prime"]);
  if (j.contains("input_spinor")) {
    const auto& s = j["input_spinor"];
    config.spinor_a = parse_complex(s.at("a"));
    config.spinor_b = parse_complex(s.at("b"));
    if (std::abs(std::norm(config.spinor_a) + std::norm(config.spinor_b) - 1.0) >
        1e-9) {
      throw std::domain_error("input spinor is not normalized");
    }
  }
  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    SweepSpec spec;
    spec.parameter = s.at("parameter").get<std::string>();
    spec.start = s.at("start").get<double>();
    spec.stop = s.at("stop").get<double>();
    spec.steps = s.at("steps").get<int>();
    config.sweep = spec;
  }
  if (j.contains("trials")) config.trials = j["trials"].get<std::int64_t>();
  if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("output")) config.output = j["output"].get<std::string>();
  if (j.contains("format")) config.format = j["format"].get<std::string>();
  if (j.contains("oracle_cases")) config.oracle_cases = j["oracle_cases"].get<int>();
  if (j.contains("inject_error")) config.inject_error = j["inject_error"].get<bool>();
  if (config.format != "csv" && config.format != "json") {
    throw std::domain_error("format must be 'csv' or 'json'");
  }
  return config;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

int cmd_entanglement(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const auto rows = entanglement_rows(config);
    if (config.format == "json") {
      write_rows_json(rows, out);
    } else {
      write_rows_csv(rows, out);
    }
    return kExitOk;
  } catch (const std::domain_error& e) {
    err << "entanglement: " << e.what() << '\n';
    return kExitUsage;
  } catch (const consistency_error& e) {
    err << "entanglement: " << e.what() << '\n';
    return kExitNumerical;
  }
}

int cmd_teleport(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const InputSpinor input(config.spinor_a, config.spinor_b, 1e-9);
    const auto expansion = expand_protocol(input, config.statistics, config.regions);

    json analytic;
    analytic["input"] = {{"a", spinor_json(input.a)}, {"b", spinor_json(input.b)}};
    analytic["statistics"] = name(config.statistics);
    json outcomes = json::array();
    double total_fidelity = 0.0;
    double success = 0.0;
    for (const auto& [label, prob] : expansion.outcome_probability) {
      json o{{"outcome", name(label)}, {"probability", prob}};
      if (label == OutcomeLabel::ZeroInL || label == OutcomeLabel::TwoInL) {
        o["correction"] = "reject";
        o["fidelity"] = 2.0 / 3.0;
        total_fidelity += prob * (2.0 / 3.0);
      } else {
        for (const auto& br : expansion.branches) {
          if (br.outcome != label || br.residual_region != config.regions.right) {
            continue;
          }
          Eigen::Vector2cd res(br.residual_up, br.residual_down);
          res.normalize();
          const double f =
              fidelity(input, apply_correction(label, config.statistics, res));
          o["correction"] = correction_name(*br.bell, config.statistics);
          o["fidelity"] = f;
          total_fidelity += prob * f;
          success += prob;
          break;
        }
      }
      outcomes.push_back(o);
    }
    analytic["per_outcome"] = outcomes;
    analytic["success_probability"] = success;
    analytic["conditional_fidelity"] = 1.0;
    analytic["total_fidelity"] = total_fidelity;
    analytic["classical_threshold"] = 2.0 / 3.0;

    json report{{"analytic", analytic}};
    if (config.trials > 0) {
      const auto mc = run_protocol(input, config.statistics, config.trials,
                                   config.seed, config.regions);
      json empirical;
      empirical["trials"] = mc.trials;
      empirical["seed"] = mc.seed;
      empirical["success_probability"] = mc.success_probability;
      empirical["conditional_fidelity"] = mc.conditional_fidelity;
      json counts = json::object();
      for (const auto& o : mc.per_outcome) counts[name(o.label)] = o.count;
      empirical["outcome_counts"] = counts;
      report["monte_carlo"] = empirical;
    }
    out << report.dump(2) << '\n';
    return kExitOk;
  } catch (const std::domain_error& e) {
    err << "teleport: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_compare_distinguishable(const RunConfig& config, std::ostream& out,
                                std::ostream& err) {
  try {
    if (!config.psi || !config.psi_prime) {
      throw std::domain_error("compare-distinguishable requires psi and psi_prime");
    }
    const LabeledPairState labeled(config.spinor_a, config.spinor_b, *config.psi,
                                   *config.psi_prime, 1e-9);
    const auto branches = decompose_outcomes(labeled);

    // Identical-particle contrast: the projected concurrence for the same
    // modes, which varies with the overlap configuration.
    const auto identical = TwoParticleState::wedge(
        config.statistics, SingleParticleState::product(*config.psi, Spin::Up),
        SingleParticleState::product(*config.psi_prime, Spin::Down));
    const auto projected =
        project_LR(identical, config.regions.left, config.regions.right);

    out << "mode_A,mode_B,probability,concurrence,identical_particle_C\n";
    for (const auto& b : branches) {
      out << b.mode_a << ',' << b.mode_b << ',' << fmt(b.probability) << ','
          << fmt(b.concurrence) << ',';
      if (projected) out << fmt(concurrence_pure(projected->amplitudes));
      out << '\n';
    }
    return kExitOk;
  } catch (const std::domain_error& e) {
    err << "compare-distinguishable: " << e.what() << '\n';
    return kExitUsage;
  }
}

namespace {

double uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

Complex random_phase(std::mt19937_64& gen) {
  const double phi = 2.0 * M_PI * uniform(gen);
  return {std::cos(phi), std::sin(phi)};
}

SingleParticleState random_single(std::mt19937_64& gen,
                                  const std::set<Region>& alphabet) {
  std::map<Mode, Complex> coeffs;
  double n2 = 0.0;
  for (const auto& r : alphabet) {
    for (Spin s : {Spin::Down, Spin::Up}) {
      const Complex c = (2.0 * uniform(gen) - 1.0) * random_phase(gen);
      coeffs[{r, s}] = c;
      n2 += std::norm(c);
    }
  }
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& [m, c] : coeffs) c *= scale;
  return SingleParticleState(std::move(coeffs), alphabet);
}

/// Normalized overlap-configuration state with random mode amplitudes and phases.
TwoParticleState random_overlap_state(std::mt19937_64& gen, Statistics stats,
                                      const Region& left, const Region& right) {
  const double theta = 0.5 * M_PI * uniform(gen);
  const double theta_p = 0.5 * M_PI * uniform(gen);
  const auto psi = SpatialWavefunction::two_mode(
      left, right, std::cos(theta) * random_phase(gen),
      std::sin(theta) * random_phase(gen));
  const auto psi_prime = SpatialWavefunction::two_mode(
      left, right, std::cos(theta_p) * random_phase(gen),
      std::sin(theta_p) * random_phase(gen));
  return TwoParticleState::wedge(stats, SingleParticleState::product(psi, Spin::Up),
                                 SingleParticleState::product(psi_prime, Spin::Down));
}

}  // namespace

int cmd_oracle_check(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    std::mt19937_64 gen(config.seed);
    const Region L = config.regions.left;
    const Region R = config.regions.right;
    const std::set<Region> alphabet{L, R};

    double dev_overlap = 0.0;
    double dev_reduced = 0.0;
    double dev_projection = 0.0;
    double dev_teleport = 0.0;

    for (int n = 0; n < config.oracle_cases; ++n) {
      const Statistics stats =
          uniform(gen) < 0.5 ? Statistics::Boson : Statistics::Fermion;

      // Inner products on generic wedge states.
      const auto phi1 = random_single(gen, alphabet);
      const auto phi2 = random_single(gen, alphabet);
      const auto bra1 = random_single(gen, alphabet);
      const auto bra2 = random_single(gen, alphabet);
      const auto generic = TwoParticleState::wedge(stats, phi1, phi2);
      const auto embedded = oracle::embed(generic);
      dev_overlap = std::max(dev_overlap,
                             std::abs(overlap_two(bra1, bra2, generic) -
                                      oracle::overlap_two(bra1, bra2, embedded)));

      // Reduced matrices and projections on overlap-configuration states.
      const auto state = random_overlap_state(gen, stats, L, R);
      const auto state_embedded = oracle::embed(state);
      const auto conditioned = condition_on_region(localized_partial_trace(state, L), R);
      const auto oracle_conditioned = oracle::reduced_matrix(state_embedded, L, R);
      if (conditioned.has_value() != oracle_conditioned.has_value()) {
        dev_reduced = std::max(dev_reduced, 1.0);
      } else if (conditioned) {
        dev_reduced = std::max(
            dev_reduced, (conditioned->matrix() - oracle_conditioned->matrix())
                             .cwiseAbs()
                             .maxCoeff());
        dev_reduced = std::max(dev_reduced, std::abs(conditioned->weight() -
                                                     oracle_conditioned->weight()));
      }

      const auto projected = project_LR(state, L, R);
      const auto oracle_projected = oracle::project_LR(state_embedded, L, R);
      if (projected.has_value() != oracle_projected.has_value()) {
        dev_projection = std::max(dev_projection, 1.0);
      } else if (projected) {
        for (int k = 0; k < 4; ++k) {
          dev_projection =
              std::max(dev_projection, std::abs(projected->amplitudes[k] -
                                                oracle_projected->amplitudes[k]));
        }
        dev_projection = std::max(dev_projection,
                                  std::abs(projected->probability -
                                           oracle_projected->probability));
      }

      // Teleportation branch coefficients against the three-particle tensor.
      const double alpha = 2.0 * M_PI * uniform(gen);
      const InputSpinor input(std::cos(alpha / 2.0) * random_phase(gen),
                              std::sin(alpha / 2.0) * random_phase(gen));
      const auto psi0 =
          SpatialWavefunction::two_mode(L, R, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
      const auto expansion = expand_protocol(input, stats, psi0, config.regions);
      const auto oracle_tp =
          oracle::teleport_branches(input, stats, psi0, config.regions);
      for (const auto& [label, prob] : expansion.outcome_probability) {
        dev_teleport = std::max(
            dev_teleport, std::abs(prob - oracle_tp.outcome_probability.at(label)));
      }
      // Accepted coefficients, elementwise.
      int bell_row = 0;
      for (const auto& br : expansion.branches) {
        if (br.residual_region != config.regions.right || !br.bell) continue;
        const Complex up = br.coefficient * br.residual_up;
        const Complex down = br.coefficient * br.residual_down;
        dev_teleport = std::max(
            dev_teleport, std::abs(up - oracle_tp.accepted_amplitudes(bell_row, 0)));
        dev_teleport = std::max(
            dev_teleport,
            std::abs(down - oracle_tp.accepted_amplitudes(bell_row, 1)));
        ++bell_row;
      }
      // Rejection blocks reconstructed from the analytic branches.
      Eigen::VectorXcd two_in_l =
          Eigen::VectorXcd::Zero(oracle_tp.two_in_l_component.size());
      Eigen::VectorXcd zero_in_l = two_in_l;
      for (const auto& br : expansion.branches) {
        if (br.outcome == OutcomeLabel::TwoInL) {
          two_in_l +=
              oracle::embed_bell_branch(br, stats, oracle_tp.modes, config.regions);
        } else if (br.outcome == OutcomeLabel::ZeroInL) {
          zero_in_l +=
              oracle::embed_bell_branch(br, stats, oracle_tp.modes, config.regions);
        }
      }
      dev_teleport = std::max(dev_teleport, (two_in_l - oracle_tp.two_in_l_component)
                                                .cwiseAbs()
                                                .maxCoeff());
      dev_teleport = std::max(dev_teleport,
                              (zero_in_l - oracle_tp.zero_in_l_component)
                                  .cwiseAbs()
                                  .maxCoeff());
    }

    if (config.inject_error) dev_teleport += 1e-6;

    const double gate = 1e-10;
    bool pass = true;
    const std::pair<const char*, double> results[] = {
        {"overlap", dev_overlap},
        {"reduced_matrix", dev_reduced},
        {"projection", dev_projection},
        {"teleport_branches", dev_teleport}};
    for (const auto& [what, dev] : results) {
      const bool ok = dev <= gate;
      pass = pass && ok;
      out << what << " max_deviation=" << fmt(dev) << (ok ? " OK" : " FAIL") << '\n';
    }
    out << "cases=" << config.oracle_cases << " result=" << (pass ? "PASS" : "FAIL")
        << '\n';
    return pass ? kExitOk : kExitNumerical;
  } catch (const std::domain_error& e) {
    err << "oracle-check: " << e.what() << '\n';
    return kExitUsage;
  }
}

int run_command(const std::string& command, const RunConfig& config,
                std::ostream& fallback_out, std::ostream& err) {
  std::ofstream file;
  std::ostream* out = &fallback_out;
  if (!config.output.empty()) {
    file.open(config.output, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "cannot open output file '" << config.output << "'\n";
      return kExitUsage;
    }
    out = &file;
  }
  if (command == "entanglement") return cmd_entanglement(config, *out, err);
  if (command == "teleport") return cmd_teleport(config, *out, err);
  if (command == "compare-distinguishable") {
    return cmd_compare_distinguishable(config, *out, err);
  }
  if (command == "oracle-check") return cmd_oracle_check(config, *out, err);
  err << "unknown command '" << command << "'\n";
  return kExitUsage;
}

}  // namespace slocc
