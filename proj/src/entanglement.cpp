#include "slocc/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace slocc {

namespace {

double binary_entropy(double x) {
  double s = 0.0;
  if (x > 0.0) s -= x * std::log2(x);
  if (x < 1.0) s -= (1.0 - x) * std::log2(1.0 - x);
  return std::max(0.0, s);
}

constexpr std::array<Spin, 2> kSpins{Spin::Down, Spin::Up};

}  // namespace

DensityMatrix localized_partial_trace(const TwoParticleState& state,
                                      const Region& region,
                                      const Eigen::Matrix2cd& spin_basis) {
  const auto alphabet = state.region_alphabet();
  if (!alphabet.count(region)) {
    throw std::domain_error("unknown trace region '" + region + "'");
  }
  if ((spin_basis.adjoint() * spin_basis - Eigen::Matrix2cd::Identity())
          .cwiseAbs()
          .maxCoeff() > kTol) {
    throw std::domain_error("spin basis for the partial trace is not unitary");
  }
  if (std::abs(norm(state) - 1.0) > 1e-9) {
    throw std::domain_error("localized partial trace expects a normalized state");
  }

  // Residual one-particle states for the two orthonormal bras localized in
  // the trace region, with spin axes given by the columns of spin_basis.
  std::array<SingleParticleState, 2> residual;
  for (int i = 0; i < 2; ++i) {
    std::map<Mode, Complex> bra;
    for (int s = 0; s < 2; ++s) bra[{region, kSpins[s]}] = spin_basis(s, i);
    residual[i] =
        partial_overlap(SingleParticleState(std::move(bra), alphabet), state);
  }

  std::vector<Mode> basis;
  for (const auto& r : alphabet) {
    for (Spin s : kSpins) basis.push_back({r, s});
  }
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& w : residual) {
    Eigen::VectorXcd v(n);
    for (Eigen::Index k = 0; k < n; ++k) v(k) = w.coeff(basis[k]);
    rho += v * v.adjoint();
  }
  const double weight = rho.trace().real();
  return DensityMatrix(std::move(basis), std::move(rho), weight);
}

std::optional<DensityMatrix> condition_on_region(const DensityMatrix& rho,
                                                 const Region& region) {
  Eigen::Index idx[2] = {-1, -1};
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(rho.basis().size()); ++k) {
    const Mode& m = rho.basis()[k];
    if (m.region == region) idx[static_cast<int>(m.spin)] = k;
  }
  if (idx[0] < 0 || idx[1] < 0) {
    throw std::domain_error("unknown conditioning region '" + region + "'");
  }
  Eigen::Matrix2cd block;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) block(i, j) = rho.matrix()(idx[i], idx[j]);
  }
  const double weight = block.trace().real();
  if (weight <= kPruneTol) return std::nullopt;
  return DensityMatrix({{region, Spin::Down}, {region, Spin::Up}}, block / weight,
                       weight);
}

std::optional<double> operational_entanglement(double p_l, double p_l_prime,
                                               double p_r, double p_r_prime) {
  for (double p : {p_l, p_l_prime, p_r, p_r_prime}) {
    if (p < -kTol || p > 1.0 + kTol) {
      throw std::domain_error("detection probabilities must lie in [0, 1]");
    }
  }
  const double down = p_l * p_r_prime;
  const double up = p_l_prime * p_r;
  const double total = down + up;
  if (total <= kPruneTol) return std::nullopt;
  return binary_entropy(down / total);
}

std::optional<ProjectedLRState> project_LR(const TwoParticleState& state,
                                           const Region& left, const Region& right) {
  if (left == right) {
    throw std::domain_error("projection regions must be distinct");
  }
  const auto alphabet = state.region_alphabet();
  std::array<Complex, 4> amps;
  double prob = 0.0;
  for (Spin sl : kSpins) {
    for (Spin sr : kSpins) {
      Complex a = overlap_two(SingleParticleState::basis_mode(left, sl, alphabet),
                              SingleParticleState::basis_mode(right, sr, alphabet),
                              state);
      amps[2 * static_cast<int>(sl) + static_cast<int>(sr)] = a;
      prob += std::norm(a);
    }
  }
  if (prob <= kPruneTol) return std::nullopt;
  const double scale = 1.0 / std::sqrt(prob);
  for (auto& a : amps) a *= scale;

  // |Psi_LR> = (lr'|Lup,Rdown> + eta l'r|Ldown,Rup>)/sqrt(P_LR); gamma is the
  // phase between the two mode-amplitude products, with eta factored out.
  const Complex a_ud = amps[2 * static_cast<int>(Spin::Up) + static_cast<int>(Spin::Down)];
  const Complex a_du = amps[2 * static_cast<int>(Spin::Down) + static_cast<int>(Spin::Up)];
  double gamma = 0.0;
  if (std::abs(a_ud) > kPruneTol && std::abs(a_du) > kPruneTol) {
    gamma = std::arg(eta(state.statistics()) * a_du * std::conj(a_ud));
  }
  return ProjectedLRState{amps, prob, gamma};
}

double concurrence_pure(const std::array<Complex, 4>& amplitudes) {
  double n2 = 0.0;
  for (const auto& a : amplitudes) n2 += std::norm(a);
  if (std::abs(n2 - 1.0) > 1e-9) {
    throw std::domain_error("concurrence expects normalized amplitudes");
  }
  return 2.0 * std::abs(amplitudes[0] * amplitudes[3] - amplitudes[1] * amplitudes[2]);
}

double entanglement_of_formation(double concurrence) {
  if (concurrence < -kTol || concurrence > 1.0 + kTol) {
    throw std::domain_error("concurrence must lie in [0, 1]");
  }
  const double c = std::clamp(concurrence, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

ModeDecomposition decompose_modes(const TwoParticleState& state, const Region& left,
                                  const Region& right) {
  for (const auto& r : state.region_alphabet()) {
    if (r != left && r != right) {
      throw std::domain_error("state has support outside the {L, R} mode pair");
    }
  }
  const auto alphabet = state.region_alphabet();
  ModeDecomposition out;
  out.c_ll = overlap_two(SingleParticleState::basis_mode(left, Spin::Up, alphabet),
                         SingleParticleState::basis_mode(left, Spin::Down, alphabet),
                         state);
  out.c_rr = overlap_two(SingleParticleState::basis_mode(right, Spin::Up, alphabet),
                         SingleParticleState::basis_mode(right, Spin::Down, alphabet),
                         state);
  out.resource = project_LR(state, left, right);
  return out;
}

}  // namespace slocc
