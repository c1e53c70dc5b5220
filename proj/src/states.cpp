#include "slocc/states.hpp"

#include <algorithm>
#include <cmath>

namespace slocc {

namespace {

void require_known_regions(const SingleParticleState& bra,
                           const std::set<Region>& alphabet) {
  for (const auto& [mode, c] : bra.coeffs()) {
    if (std::abs(c) <= kPruneTol) continue;
    if (!alphabet.count(mode.region)) {
      throw std::domain_error("region '" + mode.region +
                              "' is not in the state's region alphabet");
    }
  }
}

}  // namespace

SpatialWavefunction::SpatialWavefunction(std::map<Region, Complex> amplitudes,
                                         double norm_tol)
    : amps_(std::move(amplitudes)) {
  double n2 = 0.0;
  for (const auto& [r, a] : amps_) n2 += std::norm(a);
  if (std::abs(n2 - 1.0) > norm_tol) {
    throw std::domain_error("spatial wavefunction is not normalized: |.|^2 = " +
                            std::to_string(n2));
  }
}

Complex SpatialWavefunction::amplitude(const Region& r) const {
  auto it = amps_.find(r);
  return it == amps_.end() ? Complex{0.0, 0.0} : it->second;
}

std::set<Region> SpatialWavefunction::regions() const {
  std::set<Region> out;
  for (const auto& [r, a] : amps_) out.insert(r);
  return out;
}

SpatialWavefunction SpatialWavefunction::two_mode(const Region& left,
                                                  const Region& right, Complex l,
                                                  Complex r, double norm_tol) {
  return SpatialWavefunction({{left, l}, {right, r}}, norm_tol);
}

SpatialWavefunction SpatialWavefunction::localized(const Region& where,
                                                   const std::set<Region>& alphabet) {
  std::map<Region, Complex> amps;
  for (const auto& r : alphabet) amps[r] = 0.0;
  amps[where] = 1.0;
  return SpatialWavefunction(std::move(amps));
}

SingleParticleState::SingleParticleState(std::map<Mode, Complex> coeffs,
                                         std::set<Region> alphabet)
    : coeffs_(std::move(coeffs)), alphabet_(std::move(alphabet)) {
  for (const auto& [m, c] : coeffs_) alphabet_.insert(m.region);
}

SingleParticleState SingleParticleState::product(const SpatialWavefunction& psi,
                                                 Spin spin) {
  std::map<Mode, Complex> coeffs;
  for (const auto& [r, a] : psi.amplitudes()) coeffs[{r, spin}] = a;
  return SingleParticleState(std::move(coeffs), psi.regions());
}

SingleParticleState SingleParticleState::basis_mode(const Region& region, Spin spin,
                                                    std::set<Region> alphabet) {
  alphabet.insert(region);
  return SingleParticleState({{Mode{region, spin}, Complex{1.0, 0.0}}},
                             std::move(alphabet));
}

Complex SingleParticleState::coeff(const Mode& m) const {
  auto it = coeffs_.find(m);
  return it == coeffs_.end() ? Complex{0.0, 0.0} : it->second;
}

double SingleParticleState::norm_sq() const {
  double n2 = 0.0;
  for (const auto& [m, c] : coeffs_) n2 += std::norm(c);
  return n2;
}

double SingleParticleState::norm() const { return std::sqrt(norm_sq()); }

bool SingleParticleState::is_zero(double tol) const {
  for (const auto& [m, c] : coeffs_) {
    if (std::abs(c) > tol) return false;
  }
  return true;
}

SingleParticleState SingleParticleState::scaled(Complex factor) const {
  std::map<Mode, Complex> coeffs;
  for (const auto& [m, c] : coeffs_) coeffs[m] = factor * c;
  return SingleParticleState(std::move(coeffs), alphabet_);
}

SingleParticleState SingleParticleState::plus(const SingleParticleState& other) const {
  std::map<Mode, Complex> coeffs = coeffs_;
  for (const auto& [m, c] : other.coeffs_) coeffs[m] += c;
  std::set<Region> alpha = alphabet_;
  alpha.insert(other.alphabet_.begin(), other.alphabet_.end());
  return SingleParticleState(std::move(coeffs), std::move(alpha));
}

Complex inner(const SingleParticleState& bra, const SingleParticleState& ket) {
  Complex out{0.0, 0.0};
  for (const auto& [m, c] : bra.coeffs()) out += std::conj(c) * ket.coeff(m);
  return out;
}

TwoParticleState TwoParticleState::wedge(Statistics stats,
                                         const SingleParticleState& phi,
                                         const SingleParticleState& chi,
                                         Complex coeff) {
  TwoParticleState state(stats);
  state.add_term(coeff, phi, chi);
  return state;
}

void TwoParticleState::add_term(Complex coeff, const SingleParticleState& phi,
                                const SingleParticleState& chi) {
  // Canonical exchange identification |phi,chi> = eta |chi,phi>: order the
  // pair by its basis expansion and absorb eta into the coefficient.
  const auto& a = phi.coeffs();
  const auto& b = chi.coeffs();
  if (std::lexicographical_compare(
          b.begin(), b.end(), a.begin(), a.end(), [](const auto& x, const auto& y) {
            if (x.first != y.first) return x.first < y.first;
            if (x.second.real() != y.second.real())
              return x.second.real() < y.second.real();
            return x.second.imag() < y.second.imag();
          })) {
    terms_.push_back({coeff * eta(stats_), chi, phi});
  } else {
    terms_.push_back({coeff, phi, chi});
  }
}

std::set<Region> TwoParticleState::region_alphabet() const {
  std::set<Region> out;
  for (const auto& t : terms_) {
    out.insert(t.first.alphabet().begin(), t.first.alphabet().end());
    out.insert(t.second.alphabet().begin(), t.second.alphabet().end());
  }
  return out;
}

std::map<std::pair<Mode, Mode>, Complex> TwoParticleState::basis_expansion() const {
  std::map<std::pair<Mode, Mode>, Complex> out;
  const double sign = eta(stats_);
  for (const auto& t : terms_) {
    for (const auto& [m, cm] : t.first.coeffs()) {
      for (const auto& [n, cn] : t.second.coeffs()) {
        if (m < n) {
          out[{m, n}] += t.coeff * cm * cn;
        } else if (n < m) {
          out[{n, m}] += t.coeff * sign * cm * cn;
        } else if (stats_ == Statistics::Boson) {
          out[{m, m}] += t.coeff * cm * cn;
        }
        // fermion |m,m> vanishes identically
      }
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (std::abs(it->second) <= kPruneTol) {
      it = out.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

bool TwoParticleState::approx_equal(const TwoParticleState& other, double tol) const {
  if (stats_ != other.stats_) return false;
  auto a = basis_expansion();
  auto b = other.basis_expansion();
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    Complex w = it == b.end() ? Complex{0.0, 0.0} : it->second;
    if (std::abs(v - w) > tol) return false;
  }
  for (const auto& [k, v] : b) {
    if (!a.count(k) && std::abs(v) > tol) return false;
  }
  return true;
}

Complex overlap_two(const SingleParticleState& bra1, const SingleParticleState& bra2,
                    const TwoParticleState& ket) {
  const auto alphabet = ket.region_alphabet();
  require_known_regions(bra1, alphabet);
  require_known_regions(bra2, alphabet);
  const double sign = eta(ket.statistics());
  Complex out{0.0, 0.0};
  for (const auto& t : ket.terms()) {
    out += t.coeff * (inner(bra1, t.first) * inner(bra2, t.second) +
                      sign * inner(bra1, t.second) * inner(bra2, t.first));
  }
  return out;
}

Complex overlap(const TwoParticleState& bra, const TwoParticleState& ket) {
  if (bra.statistics() != ket.statistics()) {
    throw std::domain_error(
        "cannot mix bosonic and fermionic states in an inner product");
  }
  Complex out{0.0, 0.0};
  for (const auto& t : bra.terms()) {
    out += std::conj(t.coeff) * overlap_two(t.first, t.second, ket);
  }
  return out;
}

SingleParticleState partial_overlap(const SingleParticleState& bra,
                                    const TwoParticleState& ket) {
  const auto alphabet = ket.region_alphabet();
  require_known_regions(bra, alphabet);
  const double sign = eta(ket.statistics());
  SingleParticleState out({}, alphabet);
  for (const auto& t : ket.terms()) {
    out = out.plus(t.second.scaled(t.coeff * inner(bra, t.first)));
    out = out.plus(t.first.scaled(t.coeff * sign * inner(bra, t.second)));
  }
  return out;
}

double norm(const TwoParticleState& state) {
  const Complex self = overlap(state, state);
  if (std::abs(self.imag()) > kTol) {
    throw consistency_error("self-overlap has a non-negligible imaginary part");
  }
  if (self.real() < -kTol) {
    throw consistency_error("self-overlap is negative beyond tolerance");
  }
  return std::sqrt(std::max(0.0, self.real()));
}

}  // namespace slocc
