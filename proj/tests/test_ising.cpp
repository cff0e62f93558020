#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "pulsechain/errors.hpp"
#include "pulsechain/ising.hpp"
#include "test_support.hpp"

using namespace pulsechain;
using pulsechain::testing::max_abs_diff;
using pulsechain::testing::random_state;
using std::numbers::pi;

TEST(EnergyTable, TwoSpins) {
  const auto table = build_energy_table(ChainConfig::uniform(2));
  EXPECT_DOUBLE_EQ(table[0b00], 0.25);
  EXPECT_DOUBLE_EQ(table[0b01], -0.25);
  EXPECT_DOUBLE_EQ(table[0b10], -0.25);
  EXPECT_DOUBLE_EQ(table[0b11], 0.25);
}

TEST(EnergyTable, ThreeSpins) {
  const auto table = build_energy_table(ChainConfig::uniform(3));
  EXPECT_DOUBLE_EQ(table[0b000], 0.5);
  EXPECT_DOUBLE_EQ(table[0b010], -0.5);
  EXPECT_DOUBLE_EQ(table[0b001], 0.0);
}

TEST(EnergyTable, MaskedBond) {
  auto config = ChainConfig::uniform(3);
  config.bond_mask = {true, false};
  EXPECT_DOUBLE_EQ(build_energy_table(config)[0b011], -0.25);
}

TEST(EnergyTable, SpinFlipSymmetryAndExtremes) {
  for (int n = 2; n <= 10; ++n) {
    const auto table = build_energy_table(ChainConfig::uniform(n));
    const std::uint64_t all = (std::uint64_t{1} << n) - 1;
    double lo = 1e9, hi = -1e9;
    for (std::uint64_t b = 0; b <= all; ++b) {
      ASSERT_EQ(table[b], table[all ^ b]);
      lo = std::min(lo, table[b]);
      hi = std::max(hi, table[b]);
    }
    EXPECT_DOUBLE_EQ(lo, -(n - 1) / 4.0);
    EXPECT_DOUBLE_EQ(hi, (n - 1) / 4.0);
    std::uint64_t neel = 0;
    for (int spin = 2; spin <= n; spin += 2) neel |= std::uint64_t{1} << (n - spin);
    EXPECT_DOUBLE_EQ(table[neel], -(n - 1) / 4.0);
  }
}

TEST(ChainConfig, Validation) {
  auto config = ChainConfig::uniform(4);
  config.bond_mask.pop_back();
  EXPECT_THROW(config.validate(), SizeError);
  config = ChainConfig::uniform(4);
  config.bond_couplings[1] = std::nan("");
  EXPECT_THROW(config.validate(), ArgumentError);
  EXPECT_THROW(ChainConfig::uniform(0), SizeError);
}

TEST(Evolve, Examples) {
  const auto table = build_energy_table(ChainConfig::uniform(2));
  const auto basis = StateVector::basis(2, 0);
  const double t = 1.3;
  const auto out = evolve(basis, table, t);
  EXPECT_NEAR(std::abs(out[0] - std::exp(Complex{0, -t / 4})), 0.0, 1e-15);
  std::mt19937_64 rng(1);
  const auto psi = random_state(5, rng);
  const auto t5 = build_energy_table(ChainConfig::uniform(5));
  EXPECT_EQ(max_abs_diff(evolve(psi, t5, 0.0), psi), 0.0);
  EXPECT_LT(max_abs_diff(evolve(evolve(psi, t5, 2.7), t5, -2.7), psi), 1e-12);
  EXPECT_THROW(evolve(psi, table, 1.0), SizeError);
}

TEST(Evolve, CompositionAndPeriodicity) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> time(-10, 10);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 7;
    const auto table = build_energy_table(ChainConfig::uniform(n));
    const auto psi = random_state(n, rng);
    const double a = time(rng), b = time(rng);
    ASSERT_LT(max_abs_diff(evolve(evolve(psi, table, a), table, b), evolve(psi, table, a + b)), 1e-12);
    ASSERT_LT(max_abs_diff(evolve(psi, table, 8 * pi), psi), 1e-12);
  }
}

TEST(Energy, Expectations) {
  for (int n = 2; n <= 8; ++n) {
    EXPECT_NEAR(energy_expectation(make_plus_state(n), build_energy_table(ChainConfig::uniform(n))), 0.0, 1e-15);
  }
  const auto table = build_energy_table(ChainConfig::uniform(2));
  EXPECT_DOUBLE_EQ(energy_expectation(StateVector::basis(2, 0b00), table), 0.25);
  EXPECT_DOUBLE_EQ(energy_expectation(StateVector::basis(2, 0b01), table), -0.25);
}

TEST(Energy, ConservedUnderEvolution) {
  std::mt19937_64 rng(9);
  const auto table = build_energy_table(ChainConfig::uniform(6));
  const auto psi = random_state(6, rng);
  const double e0 = energy_expectation(psi, table);
  for (double t = 0.0; t < 20.0; t += 0.37) {
    EXPECT_NEAR(energy_expectation(evolve(psi, table, t), table), e0, 1e-12);
  }
}

TEST(Evolve, DoesNotCommuteWithKick) {
  const auto table = build_energy_table(ChainConfig::uniform(2));
  const auto psi = make_plus_state(2);
  const std::vector<int> first{1};
  const auto a = evolve(apply_y_rotation(psi, first, pi / 2), table, pi);
  const auto b = apply_y_rotation(evolve(psi, table, pi), first, pi / 2);
  double diff = 0.0;
  for (std::size_t k = 0; k < a.dimension(); ++k) diff += std::norm(a[k] - b[k]);
  EXPECT_GT(std::sqrt(diff), 0.1);
}
