#pragma once

#include "pulsechain/state.hpp"

namespace pulsechain::oracle {

enum class Curve {
  middle_pair,
  edge_pair,
  three_spin_ends,
  ends_even,
  ends_odd,
  post_protocol_middle,
};

/// Unkicked nearest-neighbour pair away from the chain ends.
double c_middle(double t);

/// Unkicked pairs (1,2) and (N-1,N): |sin t| / 2.
double c_edge(double t);

/// C_13 of the kicked three-spin chain: cos^2(t/2) for t >= pi, else 0.
double c_three_spin_ends(double t);

/// C_1N of the kicked chain for N >= 4, zero before the last kick at (N-2) pi.
double c_ends(double t, int n_spins);

/// Nearest-neighbour middle pairs after the last kick; same expression as c_middle.
double c_post_protocol_middle(double t);

/// Dispatch by curve kind. `n_spins` is only read by the end-pair curves and
/// must agree with the parity the curve encodes.
double evaluate(Curve curve, double t, int n_spins = 0);

/// Chain state at t = (N-1) pi: the middle spins in
/// (|1> + (-1)^j |0>)/sqrt(2) and the ends in (|00> + |11> + i|01> + i|10>)/2.
StateVector build_final_state(int n_spins);

}  // namespace pulsechain::oracle
