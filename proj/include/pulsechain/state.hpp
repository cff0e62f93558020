#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace pulsechain {

using Complex = std::complex<double>;

/// Largest chain the dense representation accepts (2^24 amplitudes, 256 MiB).
inline constexpr int kMaxSpins = 24;

// Basis convention
// ----------------
// Spins are numbered 1..N. Spin j carries bit b_j, stored at bit position
// N - j of the basis index, so spin 1 is the most significant bit. The bit
// value 0 is the s_z = +1/2 eigenstate, i.e. z_j = 1 - 2 b_j.

/// Bit position of spin `spin` (1-based) inside a basis index of an N-spin chain.
constexpr int bit_position(int n_spins, int spin) { return n_spins - spin; }

/// Value (0 or 1) of spin `spin` in basis index `index`.
constexpr int spin_bit(std::uint64_t index, int n_spins, int spin) {
  return static_cast<int>((index >> bit_position(n_spins, spin)) & 1U);
}

/// z_j = 1 - 2 b_j, i.e. twice the s_z eigenvalue of spin `spin`.
constexpr int spin_sign(std::uint64_t index, int n_spins, int spin) {
  return 1 - 2 * spin_bit(index, n_spins, spin);
}

/// Bitstring b_1 b_2 ... b_N of `index`, spin 1 first.
std::vector<int> index_to_bits(std::uint64_t index, int n_spins);

/// Inverse of index_to_bits.
std::uint64_t bits_to_index(std::span<const int> bits);

/// Pure state of a chain of spin-1/2 particles, stored densely.
class StateVector {
 public:
  /// |00...0>.
  explicit StateVector(int n_spins);

  /// Takes ownership of `amplitudes`; the length must be 2^n_spins.
  StateVector(int n_spins, std::vector<Complex> amplitudes);

  int n_spins() const { return n_spins_; }
  std::size_t dimension() const { return amplitudes_.size(); }

  std::span<const Complex> amplitudes() const { return amplitudes_; }
  std::span<Complex> amplitudes() { return amplitudes_; }

  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }
  Complex& operator[](std::size_t i) { return amplitudes_[i]; }

  /// Sum of |amplitude|^2.
  double norm_squared() const;

  /// Computational basis state with the given index.
  static StateVector basis(int n_spins, std::uint64_t index);

 private:
  int n_spins_;
  std::vector<Complex> amplitudes_;
};

/// Throws SizeError unless 1 <= n_spins <= kMaxSpins.
void check_spin_count(int n_spins);

/// Product of |+> = (|0> + |1>)/sqrt(2) on every spin.
StateVector make_plus_state(int n_spins);

/// Applies exp(-i theta s_y) to every spin in `targets` (1-based, distinct).
///
/// In the (|0>, |1>) basis the single-spin matrix is
/// [[cos(theta/2), -sin(theta/2)], [sin(theta/2), cos(theta/2)]].
StateVector apply_y_rotation(StateVector state, std::span<const int> targets, double theta);

/// <a|b>.
Complex inner_product(const StateVector& a, const StateVector& b);

}  // namespace pulsechain
