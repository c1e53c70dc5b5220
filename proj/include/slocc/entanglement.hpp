#pragma once

#include <array>
#include <optional>

#include "slocc/density_matrix.hpp"
#include "slocc/states.hpp"

namespace slocc {

/// State projected onto the one-particle-per-region basis
/// { |Ldown,Rdown>, |Ldown,Rup>, |Lup,Rdown>, |Lup,Rup> }.
/// Amplitudes are indexed as 2*spin_at_L + spin_at_R with Down = 0,
/// which matches the two-qubit computational-basis ordering.
struct ProjectedLRState {
  std::array<Complex, 4> amplitudes;  // normalized
  double probability;                 // <Psi|Pi_LR|Psi>
  double relative_phase;              // gamma = arg(l'r) - arg(lr')

  Complex amplitude(Spin at_left, Spin at_right) const {
    return amplitudes[2 * static_cast<int>(at_left) + static_cast<int>(at_right)];
  }
};

/// Partial trace of |Psi><Psi| over an orthonormal one-particle basis
/// localized in `region`. Unnormalized; the basis of the result spans the
/// support of the residual one-particle states. `spin_basis` rotates the
/// local spin basis used for the trace (the result must not depend on it).
DensityMatrix localized_partial_trace(
    const TwoParticleState& state, const Region& region,
    const Eigen::Matrix2cd& spin_basis = Eigen::Matrix2cd::Identity());

/// Projects a one-particle density matrix onto `region` (both spins),
/// returning the normalized spin-only matrix in basis {down@R, up@R} with
/// weight equal to the pre-normalization trace. Returns nullopt when the
/// projected trace vanishes: no operational correlations are observable
/// and the entanglement is undefined, not zero.
std::optional<DensityMatrix> condition_on_region(const DensityMatrix& rho,
                                                 const Region& region);

/// Closed form for the operational entanglement from the four detection
/// probabilities. nullopt when P_L*P'_R + P'_L*P_R = 0 (undefined).
std::optional<double> operational_entanglement(double p_l, double p_l_prime,
                                               double p_r, double p_r_prime);

/// Projection of the state onto the one-particle-per-region basis between
/// two regions. nullopt when the projection probability vanishes.
std::optional<ProjectedLRState> project_LR(const TwoParticleState& state,
                                           const Region& left, const Region& right);

/// C = 2|a00 a11 - a01 a10| for a normalized two-qubit pure state.
double concurrence_pure(const std::array<Complex, 4>& amplitudes);

/// E_f = h((1 + sqrt(1 - C^2))/2) with h the binary entropy in bits.
double entanglement_of_formation(double concurrence);

/// Decomposition of a two-mode state into the both-in-L, both-in-R and
/// one-per-region components: |Psi> = c_LL|L up,L down> + c_RR|R up,R down>
/// + sqrt(P_LR)|Psi_LR>.
struct ModeDecomposition {
  Complex c_ll;
  Complex c_rr;
  std::optional<ProjectedLRState> resource;  // nullopt when P_LR = 0
};

ModeDecomposition decompose_modes(const TwoParticleState& state, const Region& left,
                                  const Region& right);

}  // namespace slocc
