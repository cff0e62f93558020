#include "pulsechain/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "pulsechain/errors.hpp"
#include "pulsechain/measures.hpp"

namespace pulsechain {

double GridAxis::at(int k) const {
  if (count == 1) return min;
  return min + (max - min) * static_cast<double>(k) / static_cast<double>(count - 1);
}

SweepGrid SweepGrid::paper_default() {
  SweepGrid grid;
  grid.t1 = {0.1, 5.0, 50};
  grid.t2 = {5.1, 9.0, 40};
  grid.eval_time = 3.0 * std::numbers::pi;
  grid.n_spins = 4;
  return grid;
}

void SweepGrid::validate() const {
  for (const GridAxis* axis : {&t1, &t2}) {
    if (axis->count < 1) throw ArgumentError("grid axis needs at least one point");
    if (!std::isfinite(axis->min) || !std::isfinite(axis->max) || axis->min > axis->max) {
      throw ArgumentError("grid axis range must be finite with min <= max");
    }
    if (axis->min < 0.0) throw ArgumentError("kick times must be >= 0");
  }
  if (!std::isfinite(eval_time) || eval_time < t2.max) {
    throw ArgumentError("eval time must be >= the largest second-kick time");
  }
  if (n_spins < 2) throw ArgumentError("sweep needs at least 2 spins");
  check_spin_count(n_spins);
  if ((first_sign != 1 && first_sign != -1) || (second_sign != 1 && second_sign != -1)) {
    throw ArgumentError("kick signs must be +1 or -1");
  }
}

double two_kick_concurrence(const SweepGrid& grid, double t1, double t2) {
  std::vector<int> targets;
  for (int spin = 1; spin < grid.n_spins; ++spin) targets.push_back(spin);
  PulseSchedule schedule({{t1, targets, grid.first_sign, grid.angle_magnitude},
                          {t2, targets, grid.second_sign, grid.angle_magnitude}});
  KickedEvolution evolution(ChainConfig::uniform(grid.n_spins), std::move(schedule));
  return concurrence(reduce_to_pair(evolution.state_at(grid.eval_time), 1, grid.n_spins));
}

SweepResult sweep_two_kicks(const SweepGrid& grid, int threads) {
  grid.validate();
  SweepResult result;
  result.grid = grid;
  result.values.assign(static_cast<std::size_t>(grid.t1.count) * grid.t2.count, std::nullopt);

  auto run_rows = [&](int worker, int stride) {
    for (int i1 = worker; i1 < grid.t1.count; i1 += stride) {
      const double t1 = grid.t1.at(i1);
      for (int i2 = 0; i2 < grid.t2.count; ++i2) {
        const double t2 = grid.t2.at(i2);
        if (!(t2 > t1)) continue;
        result.values[static_cast<std::size_t>(i1) * grid.t2.count + i2] =
            two_kick_concurrence(grid, t1, t2);
      }
    }
  };

  const int workers = std::clamp(threads, 1, grid.t1.count);
  if (workers == 1) {
    run_rows(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run_rows, w, workers);
  }

  bool any = std::any_of(result.values.begin(), result.values.end(),
                         [](const auto& v) { return v.has_value(); });
  if (any) result.argmax = find_argmax(result);
  return result;
}

SweepCell find_argmax(const SweepResult& result) {
  const SweepGrid& grid = result.grid;
  if (result.values.size() != static_cast<std::size_t>(grid.t1.count) * grid.t2.count) {
    throw SizeError("sweep values do not match the grid shape");
  }
  std::optional<SweepCell> best;
  for (int i1 = 0; i1 < grid.t1.count; ++i1) {
    for (int i2 = 0; i2 < grid.t2.count; ++i2) {
      const auto& v = result.at(i1, i2);
      if (v && (!best || *v > best->value)) best = SweepCell{grid.t1.at(i1), grid.t2.at(i2), *v};
    }
  }
  if (!best) throw ArgumentError("sweep has no evaluated cells");
  return *best;
}

}  // namespace pulsechain
