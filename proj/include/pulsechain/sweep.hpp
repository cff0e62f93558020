#pragma once

#include <optional>
#include <vector>

#include "pulsechain/protocol.hpp"

namespace pulsechain {

/// Uniform closed range min..max with `count` points (count 1 yields min).
struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  double at(int k) const;
};

struct SweepGrid {
  GridAxis t1;
  GridAxis t2;
  double eval_time = 0.0;
  int n_spins = 4;
  double angle_magnitude = kDefaultKickAngle;
  int first_sign = +1;
  int second_sign = -1;

  /// t1 in [0.1, 5] x 50, t2 in [5.1, 9] x 40, evaluated at 3 pi on four spins.
  static SweepGrid paper_default();

  void validate() const;
};

struct SweepCell {
  double t1 = 0.0;
  double t2 = 0.0;
  double value = 0.0;
};

struct SweepResult {
  SweepGrid grid;
  /// Row-major, t1 index outer. Cells with t2 <= t1 hold nullopt.
  std::vector<std::optional<double>> values;
  SweepCell argmax;

  const std::optional<double>& at(int i1, int i2) const {
    return values[static_cast<std::size_t>(i1) * grid.t2.count + i2];
  }
};

/// C_1N at eval_time after kicks at t1 (first_sign) and t2 (second_sign) on spins 1..N-1.
double two_kick_concurrence(const SweepGrid& grid, double t1, double t2);

/// Evaluates every cell; `threads` > 1 splits rows across workers without
/// changing the result.
SweepResult sweep_two_kicks(const SweepGrid& grid, int threads = 1);

/// First cell in row-major order attaining the maximum.
SweepCell find_argmax(const SweepResult& result);

}  // namespace pulsechain
