#include "slocc/oracle.hpp"

#include <cmath>

namespace slocc::oracle {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

Eigen::VectorXcd tensor2(const Eigen::VectorXcd& u, const Eigen::VectorXcd& w) {
  Eigen::VectorXcd out(u.size() * w.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    out.segment(i * w.size(), w.size()) = u(i) * w;
  }
  return out;
}

/// (|u> (x) |w> + eta |w> (x) |u>) / sqrt(2)
Eigen::VectorXcd sym_pair(const Eigen::VectorXcd& u, const Eigen::VectorXcd& w,
                          Statistics stats) {
  return (tensor2(u, w) + eta(stats) * tensor2(w, u)) / kSqrt2;
}

Eigen::VectorXcd basis_vector(const ModeIndex& idx, const Mode& m) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(idx.size());
  v(idx.index(m)) = 1.0;
  return v;
}

/// Bell-state components over (d spin, companion spin) pairs, coefficient
/// 1/sqrt(2) with the sign pattern of the absolute +/- labels.
struct BellComponent {
  Spin d_spin;
  Spin companion_spin;
  double sign;
};

std::array<BellComponent, 2> bell_components(BellLabel label) {
  switch (label) {
    case BellLabel::PsiPlus:
      return {{{Spin::Up, Spin::Down, 1.0}, {Spin::Down, Spin::Up, 1.0}}};
    case BellLabel::PsiMinus:
      return {{{Spin::Up, Spin::Down, 1.0}, {Spin::Down, Spin::Up, -1.0}}};
    case BellLabel::PhiPlus:
      return {{{Spin::Up, Spin::Up, 1.0}, {Spin::Down, Spin::Down, 1.0}}};
    case BellLabel::PhiMinus:
      return {{{Spin::Up, Spin::Up, 1.0}, {Spin::Down, Spin::Down, -1.0}}};
  }
  throw std::logic_error("unreachable");
}

constexpr std::array<BellLabel, 4> kBellOrder{BellLabel::PsiPlus, BellLabel::PsiMinus,
                                              BellLabel::PhiPlus, BellLabel::PhiMinus};

}  // namespace

ModeIndex ModeIndex::over(const std::set<Region>& regions) {
  ModeIndex idx;
  for (const auto& r : regions) {
    idx.modes.push_back({r, Spin::Down});
    idx.modes.push_back({r, Spin::Up});
  }
  return idx;
}

Eigen::Index ModeIndex::index(const Mode& m) const {
  for (Eigen::Index k = 0; k < size(); ++k) {
    if (modes[k] == m) return k;
  }
  throw std::domain_error("mode " + m.label() + " is not indexed");
}

Eigen::VectorXcd embed_single(const SingleParticleState& state, const ModeIndex& idx) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(idx.size());
  for (const auto& [m, c] : state.coeffs()) v(idx.index(m)) = c;
  return v;
}

EmbeddedState embed(const TwoParticleState& state) {
  ModeIndex idx = ModeIndex::over(state.region_alphabet());
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(idx.size() * idx.size());
  for (const auto& t : state.terms()) {
    v += t.coeff * sym_pair(embed_single(t.first, idx), embed_single(t.second, idx),
                            state.statistics());
  }
  return {state.statistics(), std::move(idx), std::move(v)};
}

double swap_defect(const EmbeddedState& state) {
  const Eigen::Index m = state.modes.size();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const Complex swapped = state.vector(j * m + i);
      worst = std::max(worst, std::abs(swapped - eta(state.statistics) *
                                                     state.vector(i * m + j)));
    }
  }
  return worst;
}

Complex overlap_two(const SingleParticleState& bra1, const SingleParticleState& bra2,
                    const EmbeddedState& ket) {
  const Eigen::VectorXcd pair = sym_pair(embed_single(bra1, ket.modes),
                                         embed_single(bra2, ket.modes),
                                         ket.statistics);
  return pair.dot(ket.vector);  // Eigen's dot conjugates the left argument
}

Eigen::VectorXcd partial_overlap(const SingleParticleState& bra,
                                 const EmbeddedState& ket) {
  const Eigen::Index m = ket.modes.size();
  const Eigen::VectorXcd b = embed_single(bra, ket.modes);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    out += std::conj(b(i)) * ket.vector.segment(i * m, m);
  }
  return kSqrt2 * out;
}

DensityMatrix partial_density(const EmbeddedState& state, const Region& trace_region) {
  const Eigen::Index m = state.modes.size();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(m, m);
  bool seen = false;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (state.modes.modes[i].region != trace_region) continue;
    seen = true;
    const Eigen::VectorXcd w = kSqrt2 * state.vector.segment(i * m, m);
    rho += w * w.adjoint();
  }
  if (!seen) throw std::domain_error("unknown trace region '" + trace_region + "'");
  const double weight = rho.trace().real();
  return DensityMatrix(state.modes.modes, std::move(rho), weight);
}

std::optional<DensityMatrix> reduced_matrix(const EmbeddedState& state,
                                            const Region& trace_region,
                                            const Region& condition_region) {
  const DensityMatrix rho = partial_density(state, trace_region);
  Eigen::Index idx[2] = {-1, -1};
  for (Eigen::Index k = 0; k < state.modes.size(); ++k) {
    const Mode& m = state.modes.modes[k];
    if (m.region == condition_region) idx[static_cast<int>(m.spin)] = k;
  }
  if (idx[0] < 0 || idx[1] < 0) {
    throw std::domain_error("unknown conditioning region '" + condition_region + "'");
  }
  Eigen::Matrix2cd block;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) block(i, j) = rho.matrix()(idx[i], idx[j]);
  }
  const double weight = block.trace().real();
  if (weight <= kPruneTol) return std::nullopt;
  return DensityMatrix(
      {{condition_region, Spin::Down}, {condition_region, Spin::Up}}, block / weight,
      weight);
}

std::optional<Projection> project_LR(const EmbeddedState& state, const Region& left,
                                     const Region& right) {
  Projection out{};
  double prob = 0.0;
  for (Spin sl : {Spin::Down, Spin::Up}) {
    for (Spin sr : {Spin::Down, Spin::Up}) {
      const Eigen::VectorXcd basis =
          sym_pair(basis_vector(state.modes, {left, sl}),
                   basis_vector(state.modes, {right, sr}), state.statistics);
      const Complex a = basis.dot(state.vector);
      out.amplitudes[2 * static_cast<int>(sl) + static_cast<int>(sr)] = a;
      prob += std::norm(a);
    }
  }
  if (prob <= kPruneTol) return std::nullopt;
  for (auto& a : out.amplitudes) a /= std::sqrt(prob);
  out.probability = prob;
  return out;
}

TeleportBranches teleport_branches(const InputSpinor& input, Statistics stats,
                                   const SpatialWavefunction& psi0,
                                   const TeleportRegions& regions) {
  for (const auto& [r, amp] : psi0.amplitudes()) {
    if (r != regions.left && r != regions.right && std::abs(amp) > kPruneTol) {
      throw std::domain_error("psi0 must be supported on the L, R mode pair");
    }
  }
  TeleportBranches out;
  out.modes = ModeIndex::over({regions.left, regions.right});
  const Eigen::Index m = out.modes.size();

  // Pair state embedded directly from psi0, without the wedge algebra.
  Eigen::VectorXcd up = Eigen::VectorXcd::Zero(m);
  Eigen::VectorXcd down = Eigen::VectorXcd::Zero(m);
  for (const auto& [r, amp] : psi0.amplitudes()) {
    if (r != regions.left && r != regions.right) continue;
    up(out.modes.index({r, Spin::Up})) = amp;
    down(out.modes.index({r, Spin::Down})) = amp;
  }
  const Eigen::VectorXcd pair = sym_pair(up, down, stats);

  Eigen::VectorXcd d_spinor = Eigen::VectorXcd::Zero(2);
  d_spinor(static_cast<int>(Spin::Up)) = input.a;
  d_spinor(static_cast<int>(Spin::Down)) = input.b;
  out.vector = tensor2(d_spinor, pair);

  // Rejection subspaces: both identical particles in one region.
  auto count_projection = [&](const Region& where) {
    Eigen::VectorXcd proj = Eigen::VectorXcd::Zero(out.vector.size());
    for (int s = 0; s < 2; ++s) {
      for (Eigen::Index i = 0; i < m; ++i) {
        if (out.modes.modes[i].region != where) continue;
        for (Eigen::Index j = 0; j < m; ++j) {
          if (out.modes.modes[j].region != where) continue;
          const Eigen::Index k = s * m * m + i * m + j;
          proj(k) = out.vector(k);
        }
      }
    }
    return proj;
  };
  out.two_in_l_component = count_projection(regions.left);
  out.zero_in_l_component = count_projection(regions.right);
  out.outcome_probability[OutcomeLabel::TwoInL] = out.two_in_l_component.squaredNorm();
  out.outcome_probability[OutcomeLabel::ZeroInL] =
      out.zero_in_l_component.squaredNorm();

  // Accepted outcomes: orthonormal states |Bell_k; R tau> built from the
  // Bell pair (d, particle in L) and the symmetrized residual at R.
  const std::array<Spin, 2> taus{Spin::Up, Spin::Down};
  for (int k = 0; k < 4; ++k) {
    double prob = 0.0;
    for (int t = 0; t < 2; ++t) {
      Eigen::VectorXcd outcome = Eigen::VectorXcd::Zero(out.vector.size());
      for (const auto& comp : bell_components(kBellOrder[k])) {
        Eigen::VectorXcd d_part = Eigen::VectorXcd::Zero(2);
        d_part(static_cast<int>(comp.d_spin)) = comp.sign / kSqrt2;
        const Eigen::VectorXcd pair_part =
            sym_pair(basis_vector(out.modes, {regions.left, comp.companion_spin}),
                     basis_vector(out.modes, {regions.right, taus[t]}), stats);
        outcome += tensor2(d_part, pair_part);
      }
      const Complex amp = outcome.dot(out.vector);
      out.accepted_amplitudes(k, t) = amp;
      prob += std::norm(amp);
    }
    OutcomeLabel label;
    switch (kBellOrder[k]) {
      case BellLabel::PsiPlus: label = OutcomeLabel::PsiPlus; break;
      case BellLabel::PsiMinus: label = OutcomeLabel::PsiMinus; break;
      case BellLabel::PhiPlus: label = OutcomeLabel::PhiPlus; break;
      case BellLabel::PhiMinus: label = OutcomeLabel::PhiMinus; break;
    }
    out.outcome_probability[label] = prob;
  }
  return out;
}

Eigen::VectorXcd embed_bell_branch(const ProtocolBranch& branch, Statistics stats,
                                   const ModeIndex& idx,
                                   const TeleportRegions& regions) {
  const Eigen::Index m = idx.size();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(2 * m * m);

  if (!branch.bell.has_value()) {
    // Zero-in-L branch: the untouched d spinor times the pair at R.
    Eigen::VectorXcd d_part = Eigen::VectorXcd::Zero(2);
    d_part(static_cast<int>(Spin::Up)) = branch.residual_up;
    d_part(static_cast<int>(Spin::Down)) = branch.residual_down;
    const Eigen::VectorXcd pair_part =
        sym_pair(basis_vector(idx, {regions.right, Spin::Up}),
                 basis_vector(idx, {regions.right, Spin::Down}), stats);
    return branch.coefficient * tensor2(d_part, pair_part);
  }

  Eigen::VectorXcd residual = Eigen::VectorXcd::Zero(m);
  residual(idx.index({branch.residual_region, Spin::Up})) = branch.residual_up;
  residual(idx.index({branch.residual_region, Spin::Down})) = branch.residual_down;
  for (const auto& comp : bell_components(*branch.bell)) {
    Eigen::VectorXcd d_part = Eigen::VectorXcd::Zero(2);
    d_part(static_cast<int>(comp.d_spin)) = comp.sign / kSqrt2;
    const Eigen::VectorXcd pair_part = sym_pair(
        basis_vector(idx, {regions.left, comp.companion_spin}), residual, stats);
    out += tensor2(d_part, pair_part);
  }
  return branch.coefficient * out;
}

}  // namespace slocc::oracle
