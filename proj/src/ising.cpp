#include "pulsechain/ising.hpp"

#include <cmath>
#include <string>

#include "pulsechain/errors.hpp"

namespace pulsechain {

ChainConfig ChainConfig::uniform(int n_spins) {
  check_spin_count(n_spins);
  ChainConfig config;
  config.n_spins = n_spins;
  config.bond_couplings.assign(static_cast<std::size_t>(n_spins - 1), 1.0);
  config.bond_mask.assign(static_cast<std::size_t>(n_spins - 1), true);
  return config;
}

double ChainConfig::effective_coupling(int bond) const {
  return bond_mask[static_cast<std::size_t>(bond)] ? bond_couplings[static_cast<std::size_t>(bond)]
                                                   : 0.0;
}

void ChainConfig::validate() const {
  check_spin_count(n_spins);
  const auto bonds = static_cast<std::size_t>(n_spins - 1);
  if (bond_couplings.size() != bonds || bond_mask.size() != bonds) {
    throw SizeError("a " + std::to_string(n_spins) + "-spin chain has " + std::to_string(bonds) +
                    " bonds; got " + std::to_string(bond_couplings.size()) + " couplings and " +
                    std::to_string(bond_mask.size()) + " mask entries");
  }
  for (double j : bond_couplings) {
    if (!std::isfinite(j)) throw ArgumentError("bond coupling must be finite");
  }
}

EnergyTable::EnergyTable(const ChainConfig& config) : n_spins_(config.n_spins) {
  config.validate();
  const int n = n_spins_;
  energies_.assign(std::size_t{1} << n, 0.0);
  for (int bond = 0; bond < n - 1; ++bond) {
    const double coupling = config.effective_coupling(bond);
    if (coupling == 0.0) continue;
    const int left = bond + 1;
    const int right = bond + 2;
    for (std::uint64_t b = 0; b < energies_.size(); ++b) {
      const int zz = spin_sign(b, n, left) * spin_sign(b, n, right);
      energies_[b] += 0.25 * coupling * zz;
    }
  }
}

EnergyTable build_energy_table(const ChainConfig& config) { return EnergyTable(config); }

StateVector evolve(StateVector state, const EnergyTable& table, double duration) {
  if (state.n_spins() != table.n_spins()) {
    throw SizeError("energy table for " + std::to_string(table.n_spins()) +
                    " spins applied to a " + std::to_string(state.n_spins()) + "-spin state");
  }
  if (duration == 0.0) return state;
  auto amps = state.amplitudes();
  for (std::size_t b = 0; b < amps.size(); ++b) {
    const double phase = -duration * table[b];
    amps[b] *= Complex{std::cos(phase), std::sin(phase)};
  }
  return state;
}

double energy_expectation(const StateVector& state, const EnergyTable& table) {
  if (state.n_spins() != table.n_spins()) {
    throw SizeError("energy table and state sizes differ");
  }
  double sum = 0.0;
  for (std::size_t b = 0; b < state.dimension(); ++b) sum += std::norm(state[b]) * table[b];
  return sum;
}

}  // namespace pulsechain
