#pragma once

#include <compare>
#include <map>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "pulsechain/ising.hpp"
#include "pulsechain/state.hpp"

namespace pulsechain {

/// Kick rotation angle exp(-i angle s_y). Pinned by the three-spin run: pi/2
/// reproduces C_13(t) = cos^2(t/2) after the kick, pi does not.
inline constexpr double kDefaultKickAngle = std::numbers::pi / 2;

/// Instantaneous y rotation by sign * angle_magnitude on `targets` at `time`.
struct PulseEvent {
  double time = 0.0;
  std::vector<int> targets;
  int sign = +1;
  double angle_magnitude = kDefaultKickAngle;

  double angle() const { return sign * angle_magnitude; }
};

/// Kicks in strictly increasing time order.
class PulseSchedule {
 public:
  PulseSchedule() = default;
  /// Validates ordering, signs and time range; spin indices are checked
  /// against a chain by validate_for().
  explicit PulseSchedule(std::vector<PulseEvent> events);

  const std::vector<PulseEvent>& events() const { return events_; }
  bool empty() const { return events_.empty(); }
  std::size_t size() const { return events_.size(); }

  /// Throws IndexError if a target lies outside 1..n_spins or repeats.
  void validate_for(int n_spins) const;

 private:
  std::vector<PulseEvent> events_;
};

/// N-2 kicks at t_k = k pi on spins 1..N-1, alternating R, R^-1, R, ...
PulseSchedule build_paper_schedule(int n_spins, double angle_magnitude = kDefaultKickAngle);

struct SpinPair {
  int first = 0;
  int second = 0;
  auto operator<=>(const SpinPair&) const = default;
};

/// Every pair (i, j) with 1 <= i < j <= n_spins, in lexicographic order.
std::vector<SpinPair> all_pairs(int n_spins);

struct ObservableRequest {
  std::vector<SpinPair> pairs;
  bool purity_ends = true;
  bool norm = true;
  bool energy = true;
};

struct TimeSeriesRecord {
  double time = 0.0;
  std::map<SpinPair, double> pair_concurrences;
  /// Tr(rho_1N^2).
  std::optional<double> purity_1N;
  std::optional<double> norm;
  std::optional<double> energy;
};

/// Walks |+>^N forward through a schedule. A kick at tau is applied to every
/// query with t >= tau. The state at t is the post-kick state of the latest
/// kick propagated in a single step, so results do not depend on which other
/// times were queried.
class KickedEvolution {
 public:
  KickedEvolution(ChainConfig config, PulseSchedule schedule);

  /// State at time t. Queries must be non-decreasing and t >= 0.
  StateVector state_at(double t);

  const ChainConfig& config() const { return config_; }
  const EnergyTable& energy_table() const { return table_; }

 private:
  ChainConfig config_;
  PulseSchedule schedule_;
  EnergyTable table_;
  StateVector anchor_;
  double anchor_time_ = 0.0;
  std::size_t next_event_ = 0;
  double last_query_ = 0.0;
};

/// Evaluates `observables` at each of the (ascending) sample times.
std::vector<TimeSeriesRecord> run_schedule(const ChainConfig& config,
                                           const PulseSchedule& schedule,
                                           const std::vector<double>& sample_times,
                                           const ObservableRequest& observables);

/// Observables of a single state; `time` is copied into the record.
TimeSeriesRecord measure(const StateVector& state, const EnergyTable& table, double time,
                         const ObservableRequest& observables);

/// Chain with bonds r-1 and s switched off, and the paper schedule of the
/// isolated sub-chain r..s (kicks on spins r..s-1).
std::pair<ChainConfig, PulseSchedule> build_router_run(int n_spins, int r, int s,
                                                       double angle_magnitude = kDefaultKickAngle);

}  // namespace pulsechain
