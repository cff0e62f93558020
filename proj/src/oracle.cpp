#include "pulsechain/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pulsechain/errors.hpp"

namespace pulsechain::oracle {

using std::numbers::pi;

double c_middle(double t) {
  const double s = std::sin(0.5 * t);
  return std::max(0.0, 0.5 * std::abs(std::sin(t)) - 0.5 * s * s);
}

double c_edge(double t) { return 0.5 * std::abs(std::sin(t)); }

double c_three_spin_ends(double t) {
  if (t < pi) return 0.0;
  const double c = std::cos(0.5 * t);
  return c * c;
}

double c_ends(double t, int n_spins) {
  if (n_spins < 4) {
    throw ArgumentError("end-pair formula needs N >= 4; use c_three_spin_ends for N = 3");
  }
  if (t < (n_spins - 2) * pi) return 0.0;
  const double s = std::sin(0.5 * t);
  const double c = std::cos(0.5 * t);
  if (n_spins % 2 == 0) return std::max(0.0, std::abs(s) - 0.5 * c * c);
  return std::max(0.0, std::abs(c) - 0.5 * s * s);
}

double c_post_protocol_middle(double t) {
  const double s = std::sin(0.5 * t);
  return 0.5 * std::max(0.0, std::abs(std::sin(t)) - s * s);
}

double evaluate(Curve curve, double t, int n_spins) {
  switch (curve) {
    case Curve::middle_pair:
      return c_middle(t);
    case Curve::edge_pair:
      return c_edge(t);
    case Curve::three_spin_ends:
      return c_three_spin_ends(t);
    case Curve::ends_even:
      if (n_spins < 4 || n_spins % 2 != 0) throw ArgumentError("ends_even needs even N >= 4");
      return c_ends(t, n_spins);
    case Curve::ends_odd:
      if (n_spins < 5 || n_spins % 2 != 1) throw ArgumentError("ends_odd needs odd N >= 5");
      return c_ends(t, n_spins);
    case Curve::post_protocol_middle:
      return c_post_protocol_middle(t);
  }
  throw ArgumentError("unknown curve");
}

StateVector build_final_state(int n_spins) {
  if (n_spins < 3) {
    throw ArgumentError("final state defined for N >= 3, got " + std::to_string(n_spins));
  }
  check_spin_count(n_spins);
  const Complex i{0.0, 1.0};
  // Amplitudes of the (1, N) factor, indexed by 2 b_1 + b_N.
  const Complex ends[4] = {0.5, 0.5 * i, 0.5 * i, 0.5};
  const double middle = std::pow(2.0, -0.5 * (n_spins - 2));

  StateVector state(n_spins);
  for (std::uint64_t b = 0; b < state.dimension(); ++b) {
    Complex amp = ends[2 * spin_bit(b, n_spins, 1) + spin_bit(b, n_spins, n_spins)] * middle;
    for (int j = 2; j <= n_spins - 1; ++j) {
      if (spin_bit(b, n_spins, j) == 0 && j % 2 == 1) amp = -amp;
    }
    state[b] = amp;
  }
  return state;
}

}  // namespace pulsechain::oracle
