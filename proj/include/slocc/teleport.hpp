#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "slocc/states.hpp"

namespace slocc {

/// Pseudospin state of the distinguishable input particle,
/// |phi>_d = a |L'up>_d + b |L'down>_d.
struct InputSpinor {
  Complex a;  // up component
  Complex b;  // down component

  InputSpinor(Complex a_, Complex b_, double norm_tol = kTol);
};

/// Absolute Bell-state labels between the input particle and the identical
/// particle found in L: Psi+- = (|up,down> +- |down,up>)/sqrt(2),
/// Phi+- = (|up,up> +- |down,down>)/sqrt(2).
enum class BellLabel { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

/// Six-valued measurement outcome: the four Bell results with exactly one
/// identical particle in L (accepted), or a rejected particle count in L.
enum class OutcomeLabel { PsiPlus, PsiMinus, PhiPlus, PhiMinus, ZeroInL, TwoInL };

const char* name(BellLabel label);
const char* name(OutcomeLabel label);

/// Names of the measurement regions used by the protocol.
struct TeleportRegions {
  Region left = "L";
  Region right = "R";
  Region aux = "Lp";  // L', site of the distinguishable particle
};

/// One term of the Bell-basis decomposition of the initial three-particle
/// state. `coefficient` multiplies the (Bell state) x (residual) product;
/// the residual spinor components are dimensionless and normalized.
struct ProtocolBranch {
  OutcomeLabel outcome;
  std::optional<BellLabel> bell;  // unset only for the zero-in-L branch
  Complex coefficient;
  Region residual_region;
  Complex residual_up;
  Complex residual_down;
};

struct ProtocolExpansion {
  Statistics statistics;
  InputSpinor input;
  TeleportRegions regions;
  /// Four Bell branches with residual in L, the zero-in-L branch, four Bell
  /// branches with residual in R (in that order).
  std::vector<ProtocolBranch> branches;
  /// Analytic probabilities of the six outcomes; sums to 1.
  std::map<OutcomeLabel, double> outcome_probability;
};

/// Bell-basis decomposition of |phi>_d |psi0 up, psi0 down>. psi0 must be
/// supported on {left, right} only; the canonical protocol uses the
/// balanced psi0 = (|L> + |R>)/sqrt(2).
ProtocolExpansion expand_protocol(const InputSpinor& input, Statistics stats,
                                  const SpatialWavefunction& psi0,
                                  const TeleportRegions& regions = {});

ProtocolExpansion expand_protocol(const InputSpinor& input, Statistics stats,
                                  const TeleportRegions& regions = {});

/// Correction Rob applies at R for an accepted Bell outcome. The matrix is
/// the Pauli operation matched to the outcome, phased so that the corrected
/// residual equals the input spinor exactly (the -i of the sigma_y branch
/// is absorbed).
Eigen::Matrix2cd correction_matrix(BellLabel outcome, Statistics stats);

/// Physical name of the Pauli correction: "I", "sigma_x", "sigma_y", "sigma_z".
const char* correction_name(BellLabel outcome, Statistics stats);

/// Applies the matched correction to a residual spinor (up, down) at R.
/// Passing a rejection outcome is a domain error.
Eigen::Vector2cd apply_correction(OutcomeLabel outcome, Statistics stats,
                                  const Eigen::Vector2cd& residual);

/// Overlap fidelity |<target|actual>|^2 of two normalized spinors.
double fidelity(const InputSpinor& target, const Eigen::Vector2cd& actual);

struct OutcomeReport {
  OutcomeLabel label;
  double analytic_probability;
  std::int64_t count;      // Monte Carlo occurrences
  const char* correction;  // "reject" for rejection outcomes
  double fidelity;         // post-correction; rejected branches score 2/3
};

struct TeleportationReport {
  Statistics statistics;
  std::vector<OutcomeReport> per_outcome;
  double success_probability;           // empirical accepted fraction
  double analytic_success_probability;  // P_LR^max = 1/2
  double conditional_fidelity;          // over accepted trials
  double total_fidelity;                // analytic: 5/6
  double classical_threshold;           // 2/3
  std::int64_t trials;
  std::uint64_t seed;
};

/// Runs the conditional protocol for the balanced psi0: analytic branch
/// probabilities drive a seeded deterministic sampler (same seed, same
/// sequence on every platform), every accepted trial is corrected and
/// scored against the input.
TeleportationReport run_protocol(const InputSpinor& input, Statistics stats,
                                 std::int64_t trials, std::uint64_t seed,
                                 const TeleportRegions& regions = {});

}  // namespace slocc
