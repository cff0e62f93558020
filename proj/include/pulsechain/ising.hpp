#pragma once

#include <vector>

#include "pulsechain/state.hpp"

namespace pulsechain {

/// Open Ising chain H = sum_j J_j s_z,j s_z,j+1 over the N-1 nearest-neighbour bonds.
///
/// Bond j (0-based) joins spins j+1 and j+2. A bond whose mask entry is false
/// contributes nothing regardless of its coupling.
struct ChainConfig {
  int n_spins = 0;
  std::vector<double> bond_couplings;
  std::vector<bool> bond_mask;

  /// All couplings 1, all bonds active.
  static ChainConfig uniform(int n_spins);

  /// Effective coupling of bond `bond` (0-based).
  double effective_coupling(int bond) const;

  /// Throws SizeError / ArgumentError on inconsistent fields.
  void validate() const;
};

/// Diagonal of H in the computational basis, E(b) = sum_j J_j (z_j/2)(z_j+1/2).
class EnergyTable {
 public:
  explicit EnergyTable(const ChainConfig& config);

  int n_spins() const { return n_spins_; }
  std::size_t size() const { return energies_.size(); }
  double operator[](std::size_t index) const { return energies_[index]; }
  const std::vector<double>& energies() const { return energies_; }

 private:
  int n_spins_;
  std::vector<double> energies_;
};

EnergyTable build_energy_table(const ChainConfig& config);

/// Exact propagation by exp(-i duration H). Negative durations run backwards.
StateVector evolve(StateVector state, const EnergyTable& table, double duration);

/// <psi|H|psi>.
double energy_expectation(const StateVector& state, const EnergyTable& table);

}  // namespace pulsechain
