#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "slocc/types.hpp"

namespace slocc {

/// Spatial wave function over a finite, explicitly declared region set.
/// Regions with zero amplitude stay declared: the declared set is the
/// region alphabet used for compatibility checks downstream.
class SpatialWavefunction {
 public:
  SpatialWavefunction() = default;
  explicit SpatialWavefunction(std::map<Region, Complex> amplitudes,
                               double norm_tol = kTol);

  Complex amplitude(const Region& r) const;
  const std::map<Region, Complex>& amplitudes() const { return amps_; }
  std::set<Region> regions() const;

  /// psi = l|L> + r|R>
  static SpatialWavefunction two_mode(const Region& left, const Region& right,
                                      Complex l, Complex r, double norm_tol = kTol);
  /// Fully localized in one region; other declared regions get amplitude 0.
  static SpatialWavefunction localized(const Region& where,
                                       const std::set<Region>& alphabet);

 private:
  std::map<Region, Complex> amps_;
};

/// Generic one-particle state: complex coefficients over (region, spin) modes,
/// together with the declared region alphabet.
class SingleParticleState {
 public:
  SingleParticleState() = default;
  SingleParticleState(std::map<Mode, Complex> coeffs, std::set<Region> alphabet);

  /// Pure product of a spatial wave function and a definite pseudospin.
  static SingleParticleState product(const SpatialWavefunction& psi, Spin spin);
  /// Single basis mode |region spin>.
  static SingleParticleState basis_mode(const Region& region, Spin spin,
                                        std::set<Region> alphabet = {});

  Complex coeff(const Mode& m) const;
  const std::map<Mode, Complex>& coeffs() const { return coeffs_; }
  const std::set<Region>& alphabet() const { return alphabet_; }

  double norm_sq() const;
  double norm() const;
  bool is_zero(double tol = kPruneTol) const;

  SingleParticleState scaled(Complex factor) const;
  SingleParticleState plus(const SingleParticleState& other) const;

 private:
  std::map<Mode, Complex> coeffs_;
  std::set<Region> alphabet_;
};

/// <bra|ket> on the one-particle space.
Complex inner(const SingleParticleState& bra, const SingleParticleState& ket);

/// No-label two-particle state: a formal linear combination of unordered
/// wedge pairs |phi,chi> with exchange sign eta, so |phi,chi> = eta |chi,phi>.
class TwoParticleState {
 public:
  struct Term {
    Complex coeff;
    SingleParticleState first;
    SingleParticleState second;
  };

  explicit TwoParticleState(Statistics stats) : stats_(stats) {}

  /// |phi,chi> with an optional scalar coefficient.
  static TwoParticleState wedge(Statistics stats, const SingleParticleState& phi,
                                const SingleParticleState& chi, Complex coeff = 1.0);

  void add_term(Complex coeff, const SingleParticleState& phi,
                const SingleParticleState& chi);

  Statistics statistics() const { return stats_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::set<Region> region_alphabet() const;

  /// Expansion over canonically ordered basis pairs |m,n> with m <= n,
  /// eta absorbed into the coefficient and near-zero entries pruned.
  /// Makes state equality decidable.
  std::map<std::pair<Mode, Mode>, Complex> basis_expansion() const;

  bool approx_equal(const TwoParticleState& other, double tol = kTol) const;

 private:
  Statistics stats_;
  std::vector<Term> terms_;
};

/// Two-particle probability amplitude
///   <phi1',phi2'|Psi> = sum_terms c [ <phi1'|phi1><phi2'|phi2>
///                                     + eta <phi1'|phi2><phi2'|phi1> ].
Complex overlap_two(const SingleParticleState& bra1, const SingleParticleState& bra2,
                    const TwoParticleState& ket);

/// Full overlap <Psi'|Psi> of two states with the same statistics.
Complex overlap(const TwoParticleState& bra, const TwoParticleState& ket);

/// Dimension-reducing product
///   <phi'|phi1,phi2> = <phi'|phi1>|phi2> + eta <phi'|phi2>|phi1>,
/// extended linearly over the ket's terms. Result is unnormalized.
SingleParticleState partial_overlap(const SingleParticleState& bra,
                                    const TwoParticleState& ket);

/// sqrt(<Psi|Psi>); checks the self-overlap is real and non-negative.
double norm(const TwoParticleState& state);

}  // namespace slocc
