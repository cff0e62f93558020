#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "pulsechain/cli.hpp"
#include "pulsechain/measures.hpp"
#include "pulsechain/oracle.hpp"

namespace pulsechain::cli {
namespace {

using nlohmann::json;

std::string pair_column(const SpinPair& p) {
  return "C_" + std::to_string(p.first) + "_" + std::to_string(p.second);
}

std::string optional_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string{};
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

double max_deviation(const std::vector<TimeSeriesRecord>& records, const SpinPair& pair,
                     const std::function<double(double)>& expected) {
  double worst = 0.0;
  for (const auto& r : records) {
    worst = std::max(worst, std::abs(r.pair_concurrences.at(pair) - expected(r.time)));
  }
  return worst;
}

}  // namespace

TimeSeries run_time_series(const RunConfig& config) {
  const int n = config.n_spins;
  ChainConfig chain = ChainConfig::uniform(n);
  PulseSchedule schedule;
  if (config.command == Command::router) {
    std::tie(chain, schedule) = build_router_run(n, config.router_r, config.router_s, config.angle);
  } else {
    for (std::size_t k = 0; k < config.bond_mask.size(); ++k) chain.bond_mask[k] = config.bond_mask[k] == '1';
    if (config.schedule == ScheduleKind::paper) schedule = build_paper_schedule(n, config.angle);
    if (config.schedule == ScheduleKind::events) schedule = PulseSchedule(config.events);
  }

  TimeSeries series;
  series.pairs = config.pairs ? *config.pairs : all_pairs(n);
  ObservableRequest request;
  request.pairs = series.pairs;
  request.purity_ends = n >= 2;
  series.records = run_schedule(chain, schedule, sample_grid(config.t_max.value(), config.n_samples.value()),
                                request);
  return series;
}

void write_time_series(std::ostream& os, const RunConfig& config, const TimeSeries& series) {
  if (config.format == OutputFormat::csv) {
    os << "time";
    for (const SpinPair& p : series.pairs) os << ',' << pair_column(p);
    os << ",purity_1N,norm,energy\n";
    for (const auto& r : series.records) {
      os << format_number(r.time);
      for (const SpinPair& p : series.pairs) os << ',' << format_number(r.pair_concurrences.at(p));
      os << ',' << optional_number(r.purity_1N) << ',' << optional_number(r.norm) << ','
         << optional_number(r.energy) << '\n';
    }
    return;
  }

  json records = json::array();
  json maxima = json::object();
  for (const auto& r : series.records) {
    json conc = json::object();
    for (const SpinPair& p : series.pairs) {
      const double c = r.pair_concurrences.at(p);
      conc[pair_column(p)] = c;
      json& best = maxima[pair_column(p)];
      if (best.is_null() || c > best["value"].get<double>()) best = {{"value", c}, {"time", r.time}};
    }
    records.push_back({{"time", r.time},
                       {"pair_concurrences", conc},
                       {"purity_1N", optional_json(r.purity_1N)},
                       {"norm", optional_json(r.norm)},
                       {"energy", optional_json(r.energy)}});
  }
  json doc = {{"config", to_json(config)},
              {"records", records},
              {"summary", {{"samples", series.records.size()}, {"max_concurrence", maxima}}}};
  os << doc.dump(2) << '\n';
}

SweepGrid make_sweep_grid(const RunConfig& config) {
  SweepGrid grid;
  grid.t1 = config.t1;
  grid.t2 = config.t2;
  grid.eval_time = config.eval_time.value_or(3.0 * std::numbers::pi);
  grid.n_spins = config.n_spins;
  grid.angle_magnitude = config.angle;
  return grid;
}

void write_sweep(std::ostream& os, const RunConfig& config, const SweepResult& result) {
  const SweepGrid& grid = result.grid;
  const bool has_argmax = std::any_of(result.values.begin(), result.values.end(),
                                      [](const auto& v) { return v.has_value(); });
  const std::string column = "C_1_" + std::to_string(grid.n_spins);
  if (config.format == OutputFormat::csv) {
    os << "kind,t1,t2," << column << '\n';
    for (int i1 = 0; i1 < grid.t1.count; ++i1) {
      for (int i2 = 0; i2 < grid.t2.count; ++i2) {
        os << "cell," << format_number(grid.t1.at(i1)) << ',' << format_number(grid.t2.at(i2)) << ','
           << optional_number(result.at(i1, i2)) << '\n';
      }
    }
    if (has_argmax) {
      os << "argmax," << format_number(result.argmax.t1) << ',' << format_number(result.argmax.t2) << ','
         << format_number(result.argmax.value) << '\n';
    } else {
      os << "argmax,,,\n";
    }
    return;
  }

  json t1s = json::array(), t2s = json::array(), values = json::array();
  for (int i2 = 0; i2 < grid.t2.count; ++i2) t2s.push_back(grid.t2.at(i2));
  for (int i1 = 0; i1 < grid.t1.count; ++i1) {
    t1s.push_back(grid.t1.at(i1));
    json row = json::array();
    for (int i2 = 0; i2 < grid.t2.count; ++i2) row.push_back(optional_json(result.at(i1, i2)));
    values.push_back(row);
  }
  json argmax = has_argmax ? json{{"t1", result.argmax.t1}, {"t2", result.argmax.t2},
                                  {"value", result.argmax.value}}
                           : json(nullptr);
  json doc = {{"config", to_json(config)},
              {"t1", t1s},
              {"t2", t2s},
              {"values", values},
              {"summary", {{"observable", column}, {"argmax", argmax}}}};
  os << doc.dump(2) << '\n';
}

std::vector<VerifyEntry> run_verify(int n_spins, double angle) {
  const int n = n_spins;
  if (n < 3) throw UsageError("spins: verify needs N >= 3");
  std::vector<VerifyEntry> report;

  // Free evolution, no kicks.
  ObservableRequest all;
  all.pairs = all_pairs(n);
  const auto free_run =
      run_schedule(ChainConfig::uniform(n), PulseSchedule{}, sample_grid(4.0 * std::numbers::pi, 201), all);
  report.push_back({"edge_pair C_1_2",
                    max_deviation(free_run, {1, 2}, oracle::c_edge)});
  report.push_back({"edge_pair C_" + std::to_string(n - 1) + "_" + std::to_string(n),
                    max_deviation(free_run, {n - 1, n}, oracle::c_edge)});
  if (n >= 4) {
    double worst = 0.0;
    for (int j = 2; j <= n - 2; ++j) worst = std::max(worst, max_deviation(free_run, {j, j + 1}, oracle::c_middle));
    report.push_back({"middle_pair C_j_j+1", worst});
  }
  double non_neighbour = 0.0;
  for (const auto& r : free_run) {
    for (const auto& [p, c] : r.pair_concurrences) {
      if (p.second - p.first >= 2) non_neighbour = std::max(non_neighbour, c);
    }
  }
  report.push_back({"non_neighbour_zero", non_neighbour});

  // Kicked chain.
  ObservableRequest ends;
  ends.pairs = {{1, n}};
  const double t_end = (n + 2) * std::numbers::pi;
  const auto kicked = run_schedule(ChainConfig::uniform(n), build_paper_schedule(n, angle),
                                   sample_grid(t_end, 64 * (n + 2) + 1), ends);
  if (n == 3) {
    report.push_back({"three_spin_ends C_1_3", max_deviation(kicked, {1, 3}, oracle::c_three_spin_ends)});
  } else {
    report.push_back({std::string(n % 2 == 0 ? "ends_even" : "ends_odd") + " C_1_" + std::to_string(n),
                      max_deviation(kicked, {1, n}, [n](double t) { return oracle::c_ends(t, n); })});
  }

  KickedEvolution evolution(ChainConfig::uniform(n), build_paper_schedule(n, angle));
  const StateVector simulated = evolution.state_at((n - 1) * std::numbers::pi);
  const StateVector printed = oracle::build_final_state(n);
  const Eigen::Vector4cd ends_factor = Eigen::Vector4cd(Complex{0.5, 0}, Complex{0, 0.5}, Complex{0, 0.5}, Complex{0.5, 0});
  const double ends_fidelity = (ends_factor.adjoint() * reduce_to_pair(simulated, 1, n).entries() * ends_factor)(0, 0).real();
  report.push_back({"final_state_ends 1-fidelity", std::abs(1.0 - ends_fidelity)});
  report.push_back({"final_state_full 1-fidelity", std::abs(1.0 - fidelity_pure(simulated, printed))});
  return report;
}

void write_verify(std::ostream& os, const RunConfig& config, const std::vector<VerifyEntry>& report) {
  if (config.format == OutputFormat::json) {
    json entries = json::array();
    bool ok = true;
    for (const auto& e : report) {
      entries.push_back({{"formula", e.formula}, {"max_deviation", e.max_deviation},
                         {"tolerance", e.tolerance}, {"passed", e.passed()}});
      ok = ok && e.passed();
    }
    os << json{{"config", to_json(config)}, {"checks", entries}, {"summary", {{"passed", ok}}}}.dump(2) << '\n';
    return;
  }
  for (const auto& e : report) {
    os << (e.passed() ? "PASS " : "FAIL ") << e.formula << " max_deviation=" << format_number(e.max_deviation)
       << " tolerance=" << e.tolerance << '\n';
  }
}

int execute(const RunConfig& config, std::ostream& err) {
  try {
    config.validate();
    std::ostringstream buffer;
    int status = kOk;
    switch (config.command) {
      case Command::simulate:
      case Command::protocol:
      case Command::router:
        write_time_series(buffer, config, run_time_series(config));
        break;
      case Command::sweep:
        write_sweep(buffer, config, sweep_two_kicks(make_sweep_grid(config), config.threads));
        break;
      case Command::verify: {
        const auto report = run_verify(config.n_spins, config.angle);
        write_verify(buffer, config, report);
        for (const auto& e : report) {
          if (!e.passed()) {
            err << "verification failed: " << e.formula << '\n';
            status = kVerifyFailed;
          }
        }
        break;
      }
    }
    if (config.out == "-") {
      std::cout << buffer.str() << std::flush;
    } else {
      std::ofstream out(config.out, std::ios::binary);
      if (!out) throw IoError("cannot open output '" + config.out + "'");
      out << buffer.str();
      out.close();
      if (!out) throw IoError("write to '" + config.out + "' failed");
    }
    return status;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Open Ising chain driven by instantaneous y-rotation kicks"};
  app.require_subcommand(1);

  struct Flags {
    std::string config_file, save_config, t_max, pairs, schedule, angle, bond_mask, grid, eval_time, router,
        out, format;
    int spins = 0, samples = 0, threads = 1;
  } flags;

  std::vector<std::pair<CLI::App*, Command>> subs;
  for (Command c : {Command::simulate, Command::protocol, Command::sweep, Command::router, Command::verify}) {
    static const char* help[] = {"time series with an optional kick schedule", "time series of the paper protocol",
                                 "two-kick grid sweep of C_1N", "masked-bond sub-chain protocol",
                                 "compare simulation with the closed forms"};
    CLI::App* sub = app.add_subcommand(to_string(c), help[static_cast<int>(c)]);
    sub->add_option("--config", flags.config_file, "JSON config file; flags override it");
    sub->add_option("--save-config", flags.save_config, "write the resolved config to this file");
    sub->add_option("--spins", flags.spins, "number of spins N");
    sub->add_option("--angle", flags.angle, "kick angle magnitude (number or multiple of pi)");
    sub->add_option("--format", flags.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", flags.out, "output path, '-' for stdout");
    if (c == Command::sweep) {
      sub->add_option("--grid", flags.grid, "t1min:t1max:n,t2min:t2max:n");
      sub->add_option("--eval-time", flags.eval_time, "time at which C_1N is evaluated");
      sub->add_option("--threads", flags.threads, "worker threads");
    } else if (c != Command::verify) {
      sub->add_option("--t-max", flags.t_max, "last sample time");
      sub->add_option("--samples", flags.samples, "number of samples on [0, t-max]");
      sub->add_option("--pairs", flags.pairs, "'all' or e.g. 1-4,2-3");
      sub->add_option("--schedule", flags.schedule, "paper, none, or a schedule JSON file");
      sub->add_option("--bond-mask", flags.bond_mask, "one 0/1 per bond");
      if (c == Command::router) sub->add_option("--router", flags.router, "sites r,s");
    }
    subs.emplace_back(sub, c);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    CLI::App* sub = nullptr;
    Command command = Command::simulate;
    for (auto& [s, c] : subs) {
      if (s->parsed()) sub = s, command = c;
    }
    auto given = [&](const char* name) { return sub->get_option_no_throw(name) && sub->count(name) > 0; };

    RunConfig config = given("--config") ? load_config_file(flags.config_file) : RunConfig{};
    config.command = command;
    if (given("--spins")) config.n_spins = flags.spins;
    if (given("--angle")) config.angle = parse_time(flags.angle);
    if (given("--format")) config.format = flags.format == "csv" ? OutputFormat::csv : OutputFormat::json;
    if (given("--out")) config.out = flags.out;
    if (given("--t-max")) config.t_max = parse_time(flags.t_max);
    if (given("--samples")) config.n_samples = flags.samples;
    if (given("--pairs")) config.pairs = parse_pairs(flags.pairs);
    if (given("--bond-mask")) config.bond_mask = flags.bond_mask;
    if (given("--schedule")) {
      if (flags.schedule == "paper") {
        config.schedule = ScheduleKind::paper;
      } else if (flags.schedule == "none") {
        config.schedule = ScheduleKind::none;
      } else {
        std::ifstream in(flags.schedule);
        if (!in) throw IoError("cannot read schedule file '" + flags.schedule + "'");
        json doc;
        try {
          doc = json::parse(in);
        } catch (const json::parse_error& e) {
          throw UsageError("schedule '" + flags.schedule + "': " + e.what());
        }
        config.schedule = ScheduleKind::events;
        config.events = parse_schedule(doc, config.angle);
      }
    }
    if (given("--grid")) std::tie(config.t1, config.t2) = parse_grid(flags.grid);
    if (given("--eval-time")) config.eval_time = parse_time(flags.eval_time);
    if (given("--threads")) config.threads = flags.threads;
    if (given("--router")) {
      const auto comma = flags.router.find(',');
      if (comma == std::string::npos) throw UsageError("router: expected r,s");
      try {
        config.router_r = std::stoi(flags.router.substr(0, comma));
        config.router_s = std::stoi(flags.router.substr(comma + 1));
      } catch (const std::exception&) {
        throw UsageError("router: expected r,s");
      }
    }
    config.resolve();
    config.validate();
    if (given("--save-config")) save_config_file(config, flags.save_config);
    return execute(config, std::cerr);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace pulsechain::cli
