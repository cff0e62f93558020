#include "pulsechain/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pulsechain/errors.hpp"
#include "pulsechain/measures.hpp"

namespace pulsechain {

PulseSchedule::PulseSchedule(std::vector<PulseEvent> events) : events_(std::move(events)) {
  for (std::size_t k = 0; k < events_.size(); ++k) {
    const PulseEvent& ev = events_[k];
    if (!std::isfinite(ev.time) || ev.time < 0.0) {
      throw ArgumentError("kick " + std::to_string(k) + ": time must be finite and >= 0");
    }
    if (k > 0 && !(ev.time > events_[k - 1].time)) {
      throw ArgumentError("kick " + std::to_string(k) + ": times must be strictly increasing");
    }
    if (ev.sign != 1 && ev.sign != -1) {
      throw ArgumentError("kick " + std::to_string(k) + ": sign must be +1 or -1");
    }
    if (!std::isfinite(ev.angle_magnitude)) {
      throw ArgumentError("kick " + std::to_string(k) + ": angle must be finite");
    }
    if (ev.targets.empty()) {
      throw ArgumentError("kick " + std::to_string(k) + ": no target spins");
    }
  }
}

void PulseSchedule::validate_for(int n_spins) const {
  for (const PulseEvent& ev : events_) {
    std::vector<int> sorted = ev.targets;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < 1 || sorted.back() > n_spins) {
      throw IndexError("kick target outside 1.." + std::to_string(n_spins));
    }
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw IndexError("kick target repeated");
    }
  }
}

PulseSchedule build_paper_schedule(int n_spins, double angle_magnitude) {
  if (n_spins < 3) {
    throw ProtocolError("the kick protocol needs at least 3 spins, got " +
                        std::to_string(n_spins));
  }
  check_spin_count(n_spins);
  std::vector<int> targets(static_cast<std::size_t>(n_spins - 1));
  for (int k = 0; k < n_spins - 1; ++k) targets[k] = k + 1;

  std::vector<PulseEvent> events;
  for (int k = 1; k <= n_spins - 2; ++k) {
    events.push_back({k * std::numbers::pi, targets, k % 2 == 1 ? +1 : -1, angle_magnitude});
  }
  return PulseSchedule(std::move(events));
}

std::vector<SpinPair> all_pairs(int n_spins) {
  std::vector<SpinPair> pairs;
  for (int i = 1; i <= n_spins; ++i) {
    for (int j = i + 1; j <= n_spins; ++j) pairs.push_back({i, j});
  }
  return pairs;
}

KickedEvolution::KickedEvolution(ChainConfig config, PulseSchedule schedule)
    : config_(std::move(config)),
      schedule_(std::move(schedule)),
      table_(config_),
      anchor_(make_plus_state(config_.n_spins)) {
  schedule_.validate_for(config_.n_spins);
}

StateVector KickedEvolution::state_at(double t) {
  if (!std::isfinite(t) || t < 0.0) throw ArgumentError("sample time must be finite and >= 0");
  if (t < last_query_) throw ArgumentError("sample times must be non-decreasing");
  last_query_ = t;

  const auto& events = schedule_.events();
  while (next_event_ < events.size() && events[next_event_].time <= t) {
    const PulseEvent& ev = events[next_event_];
    anchor_ = evolve(std::move(anchor_), table_, ev.time - anchor_time_);
    anchor_ = apply_y_rotation(std::move(anchor_), ev.targets, ev.angle());
    anchor_time_ = ev.time;
    ++next_event_;
  }
  return evolve(anchor_, table_, t - anchor_time_);
}

TimeSeriesRecord measure(const StateVector& state, const EnergyTable& table, double time,
                         const ObservableRequest& observables) {
  TimeSeriesRecord record;
  record.time = time;
  for (const SpinPair& p : observables.pairs) {
    record.pair_concurrences[p] = concurrence(reduce_to_pair(state, p.first, p.second));
  }
  const int n = state.n_spins();
  if (observables.purity_ends && n >= 2) record.purity_1N = purity(reduce_to_pair(state, 1, n));
  if (observables.norm) record.norm = std::sqrt(state.norm_squared());
  if (observables.energy) record.energy = energy_expectation(state, table);
  return record;
}

std::vector<TimeSeriesRecord> run_schedule(const ChainConfig& config,
                                           const PulseSchedule& schedule,
                                           const std::vector<double>& sample_times,
                                           const ObservableRequest& observables) {
  if (!std::is_sorted(sample_times.begin(), sample_times.end())) {
    throw ArgumentError("sample times must be sorted ascending");
  }
  for (const SpinPair& p : observables.pairs) {
    if (p.first < 1 || p.second > config.n_spins || p.first >= p.second) {
      throw IndexError("requested pair (" + std::to_string(p.first) + ", " +
                       std::to_string(p.second) + ") invalid");
    }
  }
  KickedEvolution evolution(config, schedule);
  std::vector<TimeSeriesRecord> records;
  records.reserve(sample_times.size());
  for (double t : sample_times) {
    records.push_back(measure(evolution.state_at(t), evolution.energy_table(), t, observables));
  }
  return records;
}

std::pair<ChainConfig, PulseSchedule> build_router_run(int n_spins, int r, int s,
                                                       double angle_magnitude) {
  if (!(1 < r && r < s && s < n_spins)) {
    throw ArgumentError("router sites need 1 < r < s < N; got r=" + std::to_string(r) +
                        ", s=" + std::to_string(s) + ", N=" + std::to_string(n_spins));
  }
  if (s - r < 2) throw ArgumentError("router sites need s - r >= 2");

  ChainConfig config = ChainConfig::uniform(n_spins);
  // Bond k (0-based) joins spins k+1 and k+2.
  config.bond_mask[static_cast<std::size_t>(r - 2)] = false;
  config.bond_mask[static_cast<std::size_t>(s - 1)] = false;

  const int length = s - r + 1;
  std::vector<int> targets;
  for (int spin = r; spin < s; ++spin) targets.push_back(spin);
  std::vector<PulseEvent> events;
  for (int k = 1; k <= length - 2; ++k) {
    events.push_back({k * std::numbers::pi, targets, k % 2 == 1 ? +1 : -1, angle_magnitude});
  }
  return {std::move(config), PulseSchedule(std::move(events))};
}

}  // namespace pulsechain
