#include "pulsechain/state.hpp"

#include <cmath>
#include <string>

#include "pulsechain/errors.hpp"

namespace pulsechain {

void check_spin_count(int n_spins) {
  if (n_spins < 1 || n_spins > kMaxSpins) {
    throw SizeError("spin count " + std::to_string(n_spins) + " outside 1.." +
                    std::to_string(kMaxSpins));
  }
}

std::vector<int> index_to_bits(std::uint64_t index, int n_spins) {
  check_spin_count(n_spins);
  if (index >> n_spins) throw IndexError("basis index out of range");
  std::vector<int> bits(static_cast<std::size_t>(n_spins));
  for (int spin = 1; spin <= n_spins; ++spin) bits[spin - 1] = spin_bit(index, n_spins, spin);
  return bits;
}

std::uint64_t bits_to_index(std::span<const int> bits) {
  const int n = static_cast<int>(bits.size());
  check_spin_count(n);
  std::uint64_t index = 0;
  for (int spin = 1; spin <= n; ++spin) {
    const int b = bits[spin - 1];
    if (b != 0 && b != 1) throw ArgumentError("bit values must be 0 or 1");
    index |= static_cast<std::uint64_t>(b) << bit_position(n, spin);
  }
  return index;
}

StateVector::StateVector(int n_spins) : n_spins_(n_spins) {
  check_spin_count(n_spins);
  amplitudes_.assign(std::size_t{1} << n_spins, Complex{0.0, 0.0});
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(int n_spins, std::vector<Complex> amplitudes)
    : n_spins_(n_spins), amplitudes_(std::move(amplitudes)) {
  check_spin_count(n_spins);
  if (amplitudes_.size() != (std::size_t{1} << n_spins)) {
    throw SizeError("expected 2^" + std::to_string(n_spins) + " amplitudes, got " +
                    std::to_string(amplitudes_.size()));
  }
}

StateVector StateVector::basis(int n_spins, std::uint64_t index) {
  StateVector state(n_spins);
  if (index >= state.dimension()) throw IndexError("basis index out of range");
  state[0] = 0.0;
  state[index] = 1.0;
  return state;
}

double StateVector::norm_squared() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return sum;
}

StateVector make_plus_state(int n_spins) {
  check_spin_count(n_spins);
  const double amp = std::pow(2.0, -0.5 * n_spins);
  return StateVector(n_spins, std::vector<Complex>(std::size_t{1} << n_spins, Complex{amp, 0.0}));
}

StateVector apply_y_rotation(StateVector state, std::span<const int> targets, double theta) {
  const int n = state.n_spins();
  std::uint64_t seen = 0;
  for (int spin : targets) {
    if (spin < 1 || spin > n) {
      throw IndexError("rotation target " + std::to_string(spin) + " outside 1.." +
                       std::to_string(n));
    }
    const std::uint64_t bit = std::uint64_t{1} << bit_position(n, spin);
    if (seen & bit) throw IndexError("rotation target " + std::to_string(spin) + " repeated");
    seen |= bit;
  }

  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  auto amps = state.amplitudes();
  const std::size_t dim = amps.size();
  for (int spin : targets) {
    const std::size_t stride = std::size_t{1} << bit_position(n, spin);
    for (std::size_t block = 0; block < dim; block += 2 * stride) {
      for (std::size_t k = block; k < block + stride; ++k) {
        const Complex a0 = amps[k];
        const Complex a1 = amps[k + stride];
        amps[k] = c * a0 - s * a1;
        amps[k + stride] = s * a0 + c * a1;
      }
    }
  }
  return state;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.n_spins() != b.n_spins()) {
    throw SizeError("inner product of " + std::to_string(a.n_spins()) + "- and " +
                    std::to_string(b.n_spins()) + "-spin states");
  }
  Complex sum{0.0, 0.0};
  for (std::size_t k = 0; k < a.dimension(); ++k) sum += std::conj(a[k]) * b[k];
  return sum;
}

}  // namespace pulsechain
