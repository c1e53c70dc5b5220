#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slocc/baseline.hpp"
#include "slocc/entanglement.hpp"
#include "test_util.hpp"

using namespace slocc;

TEST_CASE("labeled pair validates its coefficients") {
  const auto psi = SpatialWavefunction::two_mode("L", "R", 0.6, 0.8);
  CHECK_THROWS_AS(LabeledPairState(1.0, 1.0, psi, psi), std::domain_error);
}

TEST_CASE("outcome probabilities factorize over the wavefunctions") {
  const double h = std::sqrt(0.5);
  const auto psi = SpatialWavefunction::two_mode("L", "R", 0.6, 0.8);
  const auto psi_prime = SpatialWavefunction::two_mode("L", "R", 0.28, 0.96);
  const LabeledPairState state{h, h, psi, psi_prime};
  const auto branches = decompose_outcomes(state);
  REQUIRE(branches.size() == 4);

  double total = 0.0;
  for (const auto& br : branches) {
    const double expected = std::norm(psi.amplitude(br.mode_a)) *
                            std::norm(psi_prime.amplitude(br.mode_b));
    CHECK(br.probability == doctest::Approx(expected).epsilon(1e-12));
    total += br.probability;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("every branch carries the same conditional state") {
  const Complex a{0.6, 0.0};
  const Complex b{0.0, 0.8};
  const auto psi = SpatialWavefunction::two_mode("L", "R", 0.9, std::sqrt(0.19));
  const LabeledPairState state{a, b, psi, psi};
  for (const auto& br : decompose_outcomes(state)) {
    CHECK(std::abs(br.amplitudes[0]) < 1e-15);
    CHECK(std::abs(br.amplitudes[1] - b) < 1e-15);
    CHECK(std::abs(br.amplitudes[2] - a) < 1e-15);
    CHECK(std::abs(br.amplitudes[3]) < 1e-15);
    CHECK(br.concurrence == doctest::Approx(2.0 * std::abs(a * b)).epsilon(1e-12));
  }
}

TEST_CASE("labeled particles cannot gain entanglement from localization") {
  // Product input (b = 0): zero concurrence in every detection branch,
  // while the identical-particle pipeline extracts a maximally entangled
  // resource from the same spatial overlap.
  const double h = std::sqrt(0.5);
  const auto psi0 = SpatialWavefunction::two_mode("L", "R", h, h);
  const LabeledPairState product{1.0, 0.0, psi0, psi0};
  for (const auto& br : decompose_outcomes(product)) {
    CHECK(br.concurrence == doctest::Approx(0.0).epsilon(1e-12));
  }

  const auto identical = testutil::overlap_state(Statistics::Boson, h, h, h, h);
  const auto proj = project_LR(identical, "L", "R");
  REQUIRE(proj.has_value());
  CHECK(concurrence_pure(proj->amplitudes) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("concurrence matches the identical-particle value only by accident") {
  // A Bell-coefficient labeled pair reaches C = 2|ab| everywhere; the
  // identical-particle concurrence depends on the overlap geometry instead.
  std::mt19937_64 gen(71);
  for (int n = 0; n < 100; ++n) {
    const double t = 0.5 * M_PI * testutil::uniform(gen);
    const Complex a = std::cos(t) * testutil::random_phase(gen);
    const Complex b = std::sin(t) * testutil::random_phase(gen);
    const auto psi = SpatialWavefunction::two_mode("L", "R", 0.6, 0.8);
    const LabeledPairState state{a, b, psi, psi};
    for (const auto& br : decompose_outcomes(state)) {
      CHECK(br.concurrence == doctest::Approx(2.0 * std::abs(a * b)).epsilon(1e-10));
    }
  }
}
