#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pulsechain/errors.hpp"
#include "pulsechain/protocol.hpp"
#include "pulsechain/sweep.hpp"

namespace pulsechain::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kUsageError = 2,
  kIoError = 3,
  kVerifyFailed = 4,
};

/// Invalid configuration; the message names the offending field.
class UsageError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

enum class Command { simulate, protocol, sweep, router, verify };
enum class OutputFormat { csv, json };
enum class ScheduleKind { none, paper, events };

struct RunConfig {
  Command command = Command::simulate;
  int n_spins = 4;

  ScheduleKind schedule = ScheduleKind::none;
  std::vector<PulseEvent> events;  // ScheduleKind::events only
  double angle = kDefaultKickAngle;
  /// '1' active, '0' cut, one character per bond. Empty means all active.
  std::string bond_mask;

  std::optional<double> t_max;
  std::optional<int> n_samples;
  /// nullopt requests every pair.
  std::optional<std::vector<SpinPair>> pairs;

  int router_r = 0;
  int router_s = 0;

  GridAxis t1{0.1, 5.0, 50};
  GridAxis t2{5.1, 9.0, 40};
  std::optional<double> eval_time;
  int threads = 1;

  std::string out = "-";
  OutputFormat format = OutputFormat::csv;

  /// Fills every optional field with its command-specific default.
  void resolve();
  /// Throws UsageError on the first invalid field.
  void validate() const;
};

std::string to_string(Command command);
Command parse_command(const std::string& text);

/// Accepts plain numbers and multiples of pi: "2.5", "pi", "3pi", "0.5*pi".
double parse_time(const std::string& text);
/// "all" or a comma list such as "1-4,2-3".
std::optional<std::vector<SpinPair>> parse_pairs(const std::string& text);
/// "t1min:t1max:n,t2min:t2max:n".
std::pair<GridAxis, GridAxis> parse_grid(const std::string& text);
/// Reads a schedule document {"events": [{"time", "targets", "sign", "angle"}]}.
std::vector<PulseEvent> parse_schedule(const nlohmann::json& doc, double default_angle);

/// Config echo; omits the output path so relocated runs stay byte-identical.
nlohmann::json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& doc);

RunConfig load_config_file(const std::string& path);
void save_config_file(const RunConfig& config, const std::string& path);

/// Closed uniform grid 0..t_max with n points.
std::vector<double> sample_grid(double t_max, int n_samples);

/// %.17g.
std::string format_number(double value);

struct TimeSeries {
  std::vector<SpinPair> pairs;
  std::vector<TimeSeriesRecord> records;
};

/// simulate, protocol and router.
TimeSeries run_time_series(const RunConfig& config);
void write_time_series(std::ostream& os, const RunConfig& config, const TimeSeries& series);

SweepGrid make_sweep_grid(const RunConfig& config);
void write_sweep(std::ostream& os, const RunConfig& config, const SweepResult& result);

struct VerifyEntry {
  std::string formula;
  double max_deviation = 0.0;
  double tolerance = 1e-9;
  bool passed() const { return max_deviation < tolerance; }
};

/// Oracle-equivalence checks for an N-spin chain.
std::vector<VerifyEntry> run_verify(int n_spins, double angle = kDefaultKickAngle);
void write_verify(std::ostream& os, const RunConfig& config, const std::vector<VerifyEntry>& report);

/// Runs a validated config and writes its output; returns the exit code.
int execute(const RunConfig& config, std::ostream& err);

/// Full command-line entry point.
int main_entry(int argc, char** argv);

}  // namespace pulsechain::cli
