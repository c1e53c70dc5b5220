#include "slocc/teleport.hpp"

#include <array>
#include <cmath>
#include <random>

namespace slocc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

const std::array<BellLabel, 4> kBellOrder{BellLabel::PsiPlus, BellLabel::PsiMinus,
                                          BellLabel::PhiPlus, BellLabel::PhiMinus};

OutcomeLabel to_outcome(BellLabel b) {
  switch (b) {
    case BellLabel::PsiPlus: return OutcomeLabel::PsiPlus;
    case BellLabel::PsiMinus: return OutcomeLabel::PsiMinus;
    case BellLabel::PhiPlus: return OutcomeLabel::PhiPlus;
    case BellLabel::PhiMinus: return OutcomeLabel::PhiMinus;
  }
  throw std::logic_error("unreachable");
}

/// Residual spinor (up, down) attached to a Bell branch, common to the
/// two-in-L and accepted blocks of the decomposition.
Eigen::Vector2cd branch_residual(BellLabel b, double sign, const InputSpinor& in) {
  switch (b) {
    case BellLabel::PsiPlus: return {sign * in.a, in.b};
    case BellLabel::PsiMinus: return {sign * in.a, -in.b};
    case BellLabel::PhiPlus: return {sign * in.b, in.a};
    case BellLabel::PhiMinus: return {-sign * in.b, in.a};
  }
  throw std::logic_error("unreachable");
}

/// Sampler with a pinned generator contract: mt19937_64 raw draws mapped to
/// [0,1) as (x >> 11) * 2^-53, identical on every conforming platform.
double next_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

InputSpinor::InputSpinor(Complex a_, Complex b_, double norm_tol) : a(a_), b(b_) {
  const double n2 = std::norm(a) + std::norm(b);
  if (std::abs(n2 - 1.0) > norm_tol) {
    throw std::domain_error("input spinor is not normalized");
  }
}

const char* name(BellLabel label) {
  switch (label) {
    case BellLabel::PsiPlus: return "PsiPlus";
    case BellLabel::PsiMinus: return "PsiMinus";
    case BellLabel::PhiPlus: return "PhiPlus";
    case BellLabel::PhiMinus: return "PhiMinus";
  }
  throw std::logic_error("unreachable");
}

const char* name(OutcomeLabel label) {
  switch (label) {
    case OutcomeLabel::PsiPlus: return "PsiPlus";
    case OutcomeLabel::PsiMinus: return "PsiMinus";
    case OutcomeLabel::PhiPlus: return "PhiPlus";
    case OutcomeLabel::PhiMinus: return "PhiMinus";
    case OutcomeLabel::ZeroInL: return "ZeroInL";
    case OutcomeLabel::TwoInL: return "TwoInL";
  }
  throw std::logic_error("unreachable");
}

ProtocolExpansion expand_protocol(const InputSpinor& input, Statistics stats,
                                  const SpatialWavefunction& psi0,
                                  const TeleportRegions& regions) {
  for (const auto& [r, amp] : psi0.amplitudes()) {
    if (r != regions.left && r != regions.right && std::abs(amp) > kPruneTol) {
      throw std::domain_error("psi0 must be supported on the L, R mode pair");
    }
  }
  const Complex l = psi0.amplitude(regions.left);
  const Complex r = psi0.amplitude(regions.right);
  const double sign = eta(stats);

  ProtocolExpansion out{stats, input, regions, {}, {}};

  // Both identical particles in L: the Bell identity applied to the
  // two-in-L component, divided by 2 for the two particles present in L.
  const Complex c_ll = l * l / (2.0 * std::sqrt(2.0));
  for (BellLabel b : kBellOrder) {
    const Eigen::Vector2cd res = branch_residual(b, sign, input);
    out.branches.push_back(
        {OutcomeLabel::TwoInL, b, c_ll, regions.left, res(0), res(1)});
  }

  // No identical particle in L: the input spinor is untouched at L'.
  out.branches.push_back({OutcomeLabel::ZeroInL, std::nullopt, r * r, regions.aux,
                          input.a, input.b});

  // One particle per region: the four accepted Bell branches with residual
  // spinors at R.
  const Complex c_lr = l * r * kInvSqrt2;
  for (BellLabel b : kBellOrder) {
    const Eigen::Vector2cd res = branch_residual(b, sign, input);
    out.branches.push_back(
        {to_outcome(b), b, c_lr, regions.right, res(0), res(1)});
  }

  const double p_ll = std::norm(l * l);
  const double p_rr = std::norm(r * r);
  const double p_bell = 0.5 * std::norm(l * r);
  out.outcome_probability = {{OutcomeLabel::TwoInL, p_ll},
                             {OutcomeLabel::ZeroInL, p_rr},
                             {OutcomeLabel::PsiPlus, p_bell},
                             {OutcomeLabel::PsiMinus, p_bell},
                             {OutcomeLabel::PhiPlus, p_bell},
                             {OutcomeLabel::PhiMinus, p_bell}};
  return out;
}

ProtocolExpansion expand_protocol(const InputSpinor& input, Statistics stats,
                                  const TeleportRegions& regions) {
  return expand_protocol(
      input, stats,
      SpatialWavefunction::two_mode(regions.left, regions.right, kInvSqrt2,
                                    kInvSqrt2),
      regions);
}

Eigen::Matrix2cd correction_matrix(BellLabel outcome, Statistics stats) {
  const Complex one{1.0, 0.0};
  Eigen::Matrix2cd m;
  const bool boson = stats == Statistics::Boson;
  switch (outcome) {
    case BellLabel::PsiPlus:
      if (boson) {
        m << one, 0.0, 0.0, one;  // identity
      } else {
        m << -one, 0.0, 0.0, one;  // sigma_z up to phase
      }
      return m;
    case BellLabel::PsiMinus:
      if (boson) {
        m << one, 0.0, 0.0, -one;  // sigma_z
      } else {
        m << -one, 0.0, 0.0, -one;  // identity up to phase
      }
      return m;
    case BellLabel::PhiPlus:
      if (boson) {
        m << 0.0, one, one, 0.0;  // sigma_x
      } else {
        m << 0.0, one, -one, 0.0;  // sigma_y with the -i absorbed
      }
      return m;
    case BellLabel::PhiMinus:
      if (boson) {
        m << 0.0, one, -one, 0.0;  // sigma_y with the -i absorbed
      } else {
        m << 0.0, one, one, 0.0;  // sigma_x
      }
      return m;
  }
  throw std::logic_error("unreachable");
}

const char* correction_name(BellLabel outcome, Statistics stats) {
  const bool boson = stats == Statistics::Boson;
  switch (outcome) {
    case BellLabel::PsiPlus: return boson ? "I" : "sigma_z";
    case BellLabel::PsiMinus: return boson ? "sigma_z" : "I";
    case BellLabel::PhiPlus: return boson ? "sigma_x" : "sigma_y";
    case BellLabel::PhiMinus: return boson ? "sigma_y" : "sigma_x";
  }
  throw std::logic_error("unreachable");
}

Eigen::Vector2cd apply_correction(OutcomeLabel outcome, Statistics stats,
                                  const Eigen::Vector2cd& residual) {
  switch (outcome) {
    case OutcomeLabel::ZeroInL:
    case OutcomeLabel::TwoInL:
      throw std::domain_error("no correction is defined for a rejected outcome");
    case OutcomeLabel::PsiPlus:
      return correction_matrix(BellLabel::PsiPlus, stats) * residual;
    case OutcomeLabel::PsiMinus:
      return correction_matrix(BellLabel::PsiMinus, stats) * residual;
    case OutcomeLabel::PhiPlus:
      return correction_matrix(BellLabel::PhiPlus, stats) * residual;
    case OutcomeLabel::PhiMinus:
      return correction_matrix(BellLabel::PhiMinus, stats) * residual;
  }
  throw std::logic_error("unreachable");
}

double fidelity(const InputSpinor& target, const Eigen::Vector2cd& actual) {
  if (std::abs(actual.squaredNorm() - 1.0) > 1e-9) {
    throw std::domain_error("fidelity expects a normalized spinor");
  }
  const Complex amp = std::conj(target.a) * actual(0) + std::conj(target.b) * actual(1);
  return std::norm(amp);
}

TeleportationReport run_protocol(const InputSpinor& input, Statistics stats,
                                 std::int64_t trials, std::uint64_t seed,
                                 const TeleportRegions& regions) {
  if (trials < 1) {
    throw std::domain_error("run_protocol requires at least one trial");
  }
  const ProtocolExpansion exp = expand_protocol(input, stats, regions);

  const std::array<OutcomeLabel, 6> order{
      OutcomeLabel::PsiPlus, OutcomeLabel::PsiMinus, OutcomeLabel::PhiPlus,
      OutcomeLabel::PhiMinus, OutcomeLabel::ZeroInL, OutcomeLabel::TwoInL};

  std::array<std::int64_t, 6> counts{};
  std::mt19937_64 gen(seed);
  std::int64_t accepted = 0;
  double fidelity_sum = 0.0;
  for (std::int64_t t = 0; t < trials; ++t) {
    const double u = next_uniform(gen);
    double acc = 0.0;
    std::size_t pick = order.size() - 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      acc += exp.outcome_probability.at(order[i]);
      if (u < acc) {
        pick = i;
        break;
      }
    }
    ++counts[pick];
    const OutcomeLabel outcome = order[pick];
    if (outcome == OutcomeLabel::ZeroInL || outcome == OutcomeLabel::TwoInL) continue;
    ++accepted;
    // The accepted branches all carry the same coefficient, so the residual
    // is read off the matching branch of the expansion.
    for (const auto& br : exp.branches) {
      if (br.outcome != outcome) continue;
      Eigen::Vector2cd res(br.residual_up, br.residual_down);
      res.normalize();
      fidelity_sum += fidelity(input, apply_correction(outcome, stats, res));
      break;
    }
  }

  TeleportationReport report;
  report.statistics = stats;
  report.trials = trials;
  report.seed = seed;
  report.analytic_success_probability = 0.0;
  double total_fidelity = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const OutcomeLabel outcome = order[i];
    const double p = exp.outcome_probability.at(outcome);
    OutcomeReport rep;
    rep.label = outcome;
    rep.analytic_probability = p;
    rep.count = counts[i];
    if (outcome == OutcomeLabel::ZeroInL || outcome == OutcomeLabel::TwoInL) {
      rep.correction = "reject";
      rep.fidelity = 2.0 / 3.0;  // rejected branches score the classical threshold
    } else {
      for (const auto& br : exp.branches) {
        if (br.outcome != outcome) continue;
        Eigen::Vector2cd res(br.residual_up, br.residual_down);
        res.normalize();
        rep.fidelity = fidelity(input, apply_correction(outcome, stats, res));
        break;
      }
      rep.correction = correction_name(kBellOrder[i], stats);
      report.analytic_success_probability += p;
    }
    total_fidelity += p * rep.fidelity;
    report.per_outcome.push_back(rep);
  }
  report.success_probability = static_cast<double>(accepted) / trials;
  report.conditional_fidelity = accepted > 0 ? fidelity_sum / accepted : 1.0;
  report.total_fidelity = total_fidelity;
  report.classical_threshold = 2.0 / 3.0;
  return report;
}

}  // namespace slocc
