#pragma once

#include <optional>

#include <Eigen/Dense>

#include "slocc/density_matrix.hpp"
#include "slocc/states.hpp"
#include "slocc/teleport.hpp"

namespace slocc::oracle {

/// Fixed ordering of the one-particle modes spanned by a region set.
struct ModeIndex {
  std::vector<Mode> modes;

  static ModeIndex over(const std::set<Region>& regions);

  Eigen::Index size() const { return static_cast<Eigen::Index>(modes.size()); }
  Eigen::Index index(const Mode& m) const;
};

/// Explicitly (anti)symmetrized labeled tensor-product realization of a
/// two-particle state: each wedge term |phi,chi> maps to
/// (|phi> (x) |chi> + eta |chi> (x) |phi>) / sqrt(2). With this factor the
/// tensor inner product reproduces the no-label two-particle amplitude
/// exactly. Indexing is slot-major: component (i, j) sits at i*M + j.
struct EmbeddedState {
  Statistics statistics;
  ModeIndex modes;
  Eigen::VectorXcd vector;
};

Eigen::VectorXcd embed_single(const SingleParticleState& state, const ModeIndex& idx);

EmbeddedState embed(const TwoParticleState& state);

/// Max |SWAP v - eta v| component; zero for a valid embedding.
double swap_defect(const EmbeddedState& state);

/// Two-particle amplitude recomputed by plain tensor contraction.
Complex overlap_two(const SingleParticleState& bra1, const SingleParticleState& bra2,
                    const EmbeddedState& ket);

/// Dimension-reduced state sqrt(2) (<bra| (x) 1) |v>, as a mode vector.
Eigen::VectorXcd partial_overlap(const SingleParticleState& bra,
                                 const EmbeddedState& ket);

/// Unnormalized one-particle density matrix after tracing over the modes of
/// `trace_region`, in the same mode ordering as the main pipeline.
DensityMatrix partial_density(const EmbeddedState& state, const Region& trace_region);

/// Partial trace over trace_region followed by conditioning on
/// condition_region; nullopt when the conditional weight vanishes.
std::optional<DensityMatrix> reduced_matrix(const EmbeddedState& state,
                                            const Region& trace_region,
                                            const Region& condition_region);

struct Projection {
  std::array<Complex, 4> amplitudes;  // normalized, indexed 2*spin@L + spin@R
  double probability;
};

std::optional<Projection> project_LR(const EmbeddedState& state, const Region& left,
                                     const Region& right);

/// Brute-force three-particle expansion of the teleportation input
/// |phi>_d (x) embed(|psi0 up, psi0 down>). The distinguishable particle is
/// an ordinary leading tensor factor of dimension 2 (spin index, down = 0).
struct TeleportBranches {
  ModeIndex modes;
  Eigen::VectorXcd vector;  // dim 2 * M^2
  std::map<OutcomeLabel, double> outcome_probability;
  /// Amplitudes on the orthonormal accepted outcome states |Bell_k; R tau>,
  /// rows ordered (PsiPlus, PsiMinus, PhiPlus, PhiMinus), cols (up, down).
  Eigen::Matrix<Complex, 4, 2> accepted_amplitudes;
  /// Raw projections onto the two-in-L / zero-in-L subspaces, for
  /// elementwise comparison against reconstructed analytic branches.
  Eigen::VectorXcd two_in_l_component;
  Eigen::VectorXcd zero_in_l_component;
};

TeleportBranches teleport_branches(const InputSpinor& input, Statistics stats,
                                   const SpatialWavefunction& psi0,
                                   const TeleportRegions& regions = {});

/// Embeds one analytic (Bell x residual-spinor) branch into the
/// three-particle tensor space, for reconstruction checks.
Eigen::VectorXcd embed_bell_branch(const ProtocolBranch& branch, Statistics stats,
                                   const ModeIndex& idx,
                                   const TeleportRegions& regions = {});

}  // namespace slocc::oracle
