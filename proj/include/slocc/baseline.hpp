#pragma once

#include <array>
#include <vector>

#include "slocc/states.hpp"

namespace slocc {

/// Bell-like state of two labeled (distinguishable) particles A, B:
///   a |psi up>_A |psi' down>_B + b |psi down>_A |psi' up>_B.
struct LabeledPairState {
  Complex a;
  Complex b;
  SpatialWavefunction psi;
  SpatialWavefunction psi_prime;

  LabeledPairState(Complex a_, Complex b_, SpatialWavefunction psi_,
                   SpatialWavefunction psi_prime_, double norm_tol = kTol);
};

/// One localized-detection outcome: particle A found in mode x, B in mode y.
/// `amplitudes` is the conditional two-qubit state in the computational
/// basis (A spin, B spin) with down = 0.
struct BaselineBranch {
  Region mode_a;
  Region mode_b;
  double probability;
  std::array<Complex, 4> amplitudes;
  double concurrence;
};

/// All (mode, mode) detection outcomes with their probabilities and
/// conditional states. The conditional concurrence is 2|ab| in every
/// branch: labeled particles keep a fixed degree of entanglement.
std::vector<BaselineBranch> decompose_outcomes(const LabeledPairState& state);

}  // namespace slocc
