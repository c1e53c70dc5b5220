#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slocc/oracle.hpp"
#include "slocc/states.hpp"
#include "test_util.hpp"

using namespace slocc;
using testutil::random_single;

namespace {

SingleParticleState mode_state(const Region& r, Spin s) {
  return SingleParticleState::basis_mode(r, s, {"L", "R"});
}

}  // namespace

TEST_CASE("two-particle amplitude on the reference state") {
  // |psi up, psi' down> with orthogonal spins is normalized for any overlap.
  const auto state = testutil::overlap_state(Statistics::Boson, std::sqrt(0.8),
                                             std::sqrt(0.2), std::sqrt(0.2),
                                             std::sqrt(0.8));
  const Complex self = overlap(state, state);
  CHECK(self.real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(self.imag()) < 1e-12);
}

TEST_CASE("identical bosonic pair has self-amplitude 2") {
  std::mt19937_64 gen(7);
  const auto phi = random_single(gen);
  const auto pair = TwoParticleState::wedge(Statistics::Boson, phi, phi);
  const Complex self = overlap_two(phi, phi, pair);
  CHECK(self.real() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(norm(pair) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("fermionic pair of equal states vanishes") {
  std::mt19937_64 gen(11);
  const auto phi = random_single(gen);
  const auto pair = TwoParticleState::wedge(Statistics::Fermion, phi, phi);
  CHECK(norm(pair) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(partial_overlap(phi, pair).is_zero(1e-12));
  CHECK(pair.basis_expansion().empty());
}

TEST_CASE("localized amplitude picks out the mode product") {
  // <L up, R down | psi up, psi' down> = l r'
  const double l = std::sqrt(0.8), r = std::sqrt(0.2);
  const double lp = std::sqrt(0.3), rp = std::sqrt(0.7);
  for (Statistics stats : {Statistics::Boson, Statistics::Fermion}) {
    const auto state = testutil::overlap_state(stats, l, r, lp, rp);
    const Complex amp =
        overlap_two(mode_state("L", Spin::Up), mode_state("R", Spin::Down), state);
    CHECK(std::abs(amp - Complex(l * rp, 0.0)) < 1e-12);
  }
}

TEST_CASE("dimension-reducing products of the reference state") {
  const double l = 0.6, r = 0.8, lp = 0.28, rp = 0.96;
  for (Statistics stats : {Statistics::Boson, Statistics::Fermion}) {
    const auto state = testutil::overlap_state(stats, l, r, lp, rp);

    // <L up | psi up, psi' down> = l |psi' down>
    const auto down_part = partial_overlap(mode_state("L", Spin::Up), state);
    CHECK(std::abs(down_part.coeff({"L", Spin::Down}) - Complex(l * lp, 0.0)) < 1e-12);
    CHECK(std::abs(down_part.coeff({"R", Spin::Down}) - Complex(l * rp, 0.0)) < 1e-12);
    CHECK(std::abs(down_part.coeff({"L", Spin::Up})) < 1e-15);

    // <L down | psi up, psi' down> = eta l' |psi up>
    const auto up_part = partial_overlap(mode_state("L", Spin::Down), state);
    CHECK(std::abs(up_part.coeff({"R", Spin::Up}) -
                   eta(stats) * Complex(lp * r, 0.0)) < 1e-12);
  }
}

TEST_CASE("region alphabet mismatch raises") {
  const auto state = testutil::overlap_state(Statistics::Boson, 1.0, 0.0, 0.0, 1.0);
  const auto stray = SingleParticleState::basis_mode("X", Spin::Up);
  CHECK_THROWS_AS(partial_overlap(stray, state), std::domain_error);
  CHECK_THROWS_AS(overlap_two(stray, stray, state), std::domain_error);
}

TEST_CASE("mixed statistics are rejected") {
  std::mt19937_64 gen(3);
  const auto boson = TwoParticleState::wedge(Statistics::Boson, random_single(gen),
                                             random_single(gen));
  const auto fermion = TwoParticleState::wedge(Statistics::Fermion,
                                               random_single(gen), random_single(gen));
  CHECK_THROWS_AS(overlap(boson, fermion), std::domain_error);
}

TEST_CASE("exchange symmetry of the bra pair") {
  std::mt19937_64 gen(23);
  for (Statistics stats : {Statistics::Boson, Statistics::Fermion}) {
    for (int n = 0; n < 200; ++n) {
      const auto ket = TwoParticleState::wedge(stats, random_single(gen),
                                               random_single(gen));
      const auto chi = random_single(gen);
      const auto phi = random_single(gen);
      const Complex ab = overlap_two(chi, phi, ket);
      const Complex ba = overlap_two(phi, chi, ket);
      CHECK(std::abs(ab - eta(stats) * ba) < 1e-12);
    }
  }
}

TEST_CASE("exchange identification makes swapped wedges equal") {
  std::mt19937_64 gen(29);
  for (Statistics stats : {Statistics::Boson, Statistics::Fermion}) {
    const auto phi = random_single(gen);
    const auto chi = random_single(gen);
    const auto ab = TwoParticleState::wedge(stats, phi, chi);
    const auto ba = TwoParticleState::wedge(stats, chi, phi, eta(stats));
    CHECK(ab.approx_equal(ba));
  }
}

TEST_CASE("self-overlap is real and non-negative") {
  std::mt19937_64 gen(41);
  for (Statistics stats : {Statistics::Boson, Statistics::Fermion}) {
    for (int n = 0; n < 500; ++n) {
      auto state = TwoParticleState::wedge(stats, random_single(gen),
                                           random_single(gen));
      state.add_term(testutil::random_phase(gen) * testutil::uniform(gen),
                     random_single(gen), random_single(gen));
      const Complex self = overlap(state, state);
      CHECK(std::abs(self.imag()) < 1e-12);
      CHECK(self.real() >= -1e-12);
    }
  }
}

TEST_CASE("overlap is linear in the ket coefficients") {
  std::mt19937_64 gen(53);
  const auto bra1 = random_single(gen);
  const auto bra2 = random_single(gen);
  const auto phi1 = random_single(gen);
  const auto phi2 = random_single(gen);
  const auto chi1 = random_single(gen);
  const auto chi2 = random_single(gen);
  for (Statistics stats : {Statistics::Boson, Statistics::Fermion}) {
    const Complex c1 = testutil::random_phase(gen) * 0.7;
    const Complex c2 = testutil::random_phase(gen) * 1.3;
    TwoParticleState combined(stats);
    combined.add_term(c1, phi1, phi2);
    combined.add_term(c2, chi1, chi2);
    const Complex lhs = overlap_two(bra1, bra2, combined);
    const Complex rhs =
        c1 * overlap_two(bra1, bra2, TwoParticleState::wedge(stats, phi1, phi2)) +
        c2 * overlap_two(bra1, bra2, TwoParticleState::wedge(stats, chi1, chi2));
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("amplitudes agree with the embedded tensor oracle") {
  std::mt19937_64 gen(61);
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const Statistics stats =
        testutil::uniform(gen) < 0.5 ? Statistics::Boson : Statistics::Fermion;
    const auto ket = TwoParticleState::wedge(stats, random_single(gen),
                                             random_single(gen));
    const auto embedded = oracle::embed(ket);
    const auto bra1 = random_single(gen);
    const auto bra2 = random_single(gen);
    worst = std::max(worst, std::abs(overlap_two(bra1, bra2, ket) -
                                     oracle::overlap_two(bra1, bra2, embedded)));
  }
  CHECK(worst <= 1e-12);
}
