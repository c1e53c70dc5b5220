#include "slocc/baseline.hpp"

#include <cmath>

#include "slocc/entanglement.hpp"

namespace slocc {

LabeledPairState::LabeledPairState(Complex a_, Complex b_, SpatialWavefunction psi_,
                                   SpatialWavefunction psi_prime_, double norm_tol)
    : a(a_), b(b_), psi(std::move(psi_)), psi_prime(std::move(psi_prime_)) {
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > norm_tol) {
    throw std::domain_error("labeled pair coefficients are not normalized");
  }
}

std::vector<BaselineBranch> decompose_outcomes(const LabeledPairState& state) {
  std::vector<BaselineBranch> out;
  for (const auto& [x, amp_a] : state.psi.amplitudes()) {
    for (const auto& [y, amp_b] : state.psi_prime.amplitudes()) {
      const Complex weight = amp_a * amp_b;
      const double prob = std::norm(weight);
      // Conditional state a|up,down> + b|down,up> regardless of modes.
      BaselineBranch branch{x, y, prob, {0.0, state.b, state.a, 0.0}, 0.0};
      branch.concurrence = concurrence_pure(branch.amplitudes);
      out.push_back(branch);
    }
  }
  return out;
}

}  // namespace slocc
