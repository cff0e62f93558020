#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>

#include "pulsechain/cli.hpp"

namespace pulsechain::cli {
namespace {

using nlohmann::json;

const char* kCommandNames[] = {"simulate", "protocol", "sweep", "router", "verify"};

int parse_int(const std::string& text, const std::string& field) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used == text.size()) return value;
  } catch (const std::exception&) {
  }
  throw UsageError(field + ": expected an integer, got '" + text + "'");
}

json axis_to_json(const GridAxis& axis) {
  return {{"min", axis.min}, {"max", axis.max}, {"count", axis.count}};
}

GridAxis axis_from_json(const json& doc, const std::string& field) {
  try {
    return {doc.at("min").get<double>(), doc.at("max").get<double>(), doc.at("count").get<int>()};
  } catch (const json::exception& e) {
    throw UsageError(field + ": " + e.what());
  }
}

double time_from_json(const json& value, const std::string& field) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return parse_time(value.get<std::string>());
  throw UsageError(field + ": expected a number or a multiple of pi");
}

}  // namespace

std::string to_string(Command command) { return kCommandNames[static_cast<int>(command)]; }

Command parse_command(const std::string& text) {
  for (int k = 0; k < 5; ++k) {
    if (text == kCommandNames[k]) return static_cast<Command>(k);
  }
  throw UsageError("command: unknown '" + text + "'");
}

double parse_time(const std::string& text) {
  static const std::regex pattern(R"(^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)?\s*(\*?\s*pi)?\s*$)");
  std::smatch m;
  if (!text.empty() && std::regex_match(text, m, pattern) && (m[1].matched || m[2].matched)) {
    const double coefficient = m[1].matched ? std::stod(m[1].str()) : 1.0;
    return m[2].matched ? coefficient * std::numbers::pi : coefficient;
  }
  throw UsageError("time: cannot parse '" + text + "'");
}

std::optional<std::vector<SpinPair>> parse_pairs(const std::string& text) {
  if (text == "all") return std::nullopt;
  std::vector<SpinPair> pairs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw UsageError("pairs: expected i-j, got '" + item + "'");
    pairs.push_back({parse_int(item.substr(0, dash), "pairs"), parse_int(item.substr(dash + 1), "pairs")});
  }
  if (pairs.empty()) throw UsageError("pairs: empty list");
  return pairs;
}

std::pair<GridAxis, GridAxis> parse_grid(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("grid: expected t1min:t1max:n,t2min:t2max:n");
  auto axis = [](const std::string& part) {
    std::vector<std::string> fields;
    std::stringstream ss(part);
    std::string f;
    while (std::getline(ss, f, ':')) fields.push_back(f);
    if (fields.size() != 3) throw UsageError("grid: axis '" + part + "' needs min:max:n");
    return GridAxis{parse_time(fields[0]), parse_time(fields[1]), parse_int(fields[2], "grid")};
  };
  return {axis(text.substr(0, comma)), axis(text.substr(comma + 1))};
}

std::vector<PulseEvent> parse_schedule(const json& doc, double default_angle) {
  if (!doc.is_object() || !doc.contains("events") || !doc["events"].is_array()) {
    throw UsageError("schedule: expected an object with an 'events' array");
  }
  std::vector<PulseEvent> events;
  for (std::size_t k = 0; k < doc["events"].size(); ++k) {
    const json& e = doc["events"][k];
    const std::string field = "schedule.events[" + std::to_string(k) + "]";
    try {
      PulseEvent ev;
      ev.time = time_from_json(e.at("time"), field + ".time");
      ev.targets = e.at("targets").get<std::vector<int>>();
      ev.sign = e.value("sign", 1);
      ev.angle_magnitude = e.contains("angle") ? time_from_json(e["angle"], field + ".angle") : default_angle;
      events.push_back(std::move(ev));
    } catch (const json::exception& ex) {
      throw UsageError(field + ": " + ex.what());
    }
  }
  try {
    PulseSchedule check(events);
  } catch (const Error& ex) {
    throw UsageError(std::string("schedule: ") + ex.what());
  }
  return events;
}

void RunConfig::resolve() {
  if (command == Command::protocol) schedule = ScheduleKind::paper;
  if (!t_max) t_max = (n_spins + 2) * std::numbers::pi;
  if (!n_samples) n_samples = static_cast<int>(std::lround(64.0 * *t_max / std::numbers::pi)) + 1;
  if (command == Command::sweep && !eval_time) eval_time = 3.0 * std::numbers::pi;
  if (bond_mask.empty() && n_spins >= 1) bond_mask.assign(static_cast<std::size_t>(std::max(0, n_spins - 1)), '1');
}

void RunConfig::validate() const {
  if (n_spins < 1 || n_spins > kMaxSpins) {
    throw UsageError("spins: must lie in 1.." + std::to_string(kMaxSpins));
  }
  if ((command == Command::protocol || command == Command::verify || schedule == ScheduleKind::paper) &&
      n_spins < 3) {
    throw UsageError("spins: the kick protocol needs at least 3 spins");
  }
  if (command == Command::sweep && n_spins < 2) throw UsageError("spins: sweep needs at least 2 spins");
  if (!std::isfinite(angle)) throw UsageError("angle: must be finite");
  if (t_max && (!std::isfinite(*t_max) || *t_max < 0.0)) throw UsageError("t-max: must be >= 0");
  if (n_samples && *n_samples < 1) throw UsageError("samples: must be >= 1");
  if (!bond_mask.empty()) {
    if (bond_mask.size() != static_cast<std::size_t>(n_spins - 1)) {
      throw UsageError("bond-mask: expected " + std::to_string(n_spins - 1) + " characters");
    }
    if (bond_mask.find_first_not_of("01") != std::string::npos) {
      throw UsageError("bond-mask: only '0' and '1' allowed");
    }
  }
  if (pairs) {
    for (const SpinPair& p : *pairs) {
      if (p.first < 1 || p.second > n_spins || p.first >= p.second) {
        throw UsageError("pairs: (" + std::to_string(p.first) + ", " + std::to_string(p.second) +
                         ") must satisfy 1 <= i < j <= N");
      }
    }
  }
  if (schedule == ScheduleKind::events) {
    try {
      PulseSchedule(events).validate_for(n_spins);
    } catch (const Error& ex) {
      throw UsageError(std::string("schedule: ") + ex.what());
    }
  }
  if (command == Command::router) {
    if (!(1 < router_r && router_r < router_s && router_s < n_spins) || router_s - router_r < 2) {
      throw UsageError("router: sites need 1 < r < s < N and s - r >= 2");
    }
    if (schedule == ScheduleKind::events) throw UsageError("schedule: router builds its own schedule");
    if (bond_mask.find('0') != std::string::npos) {
      throw UsageError("bond-mask: router builds its own bond mask");
    }
  }
  if (command == Command::protocol && schedule != ScheduleKind::paper) {
    throw UsageError("schedule: protocol always runs the paper schedule");
  }
  if (command == Command::sweep) {
    SweepGrid grid;
    grid.t1 = t1;
    grid.t2 = t2;
    grid.eval_time = eval_time.value_or(3.0 * std::numbers::pi);
    grid.n_spins = n_spins;
    grid.angle_magnitude = angle;
    try {
      grid.validate();
    } catch (const Error& ex) {
      throw UsageError(std::string("grid/eval-time: ") + ex.what());
    }
    if (threads < 1) throw UsageError("threads: must be >= 1");
  }
}

json to_json(const RunConfig& config) {
  json doc;
  doc["command"] = to_string(config.command);
  doc["spins"] = config.n_spins;
  doc["angle"] = config.angle;
  doc["format"] = config.format == OutputFormat::csv ? "csv" : "json";
  switch (config.command) {
    case Command::sweep:
      doc["grid"] = {{"t1", axis_to_json(config.t1)}, {"t2", axis_to_json(config.t2)}};
      if (config.eval_time) doc["eval_time"] = *config.eval_time;
      doc["threads"] = config.threads;
      return doc;
    case Command::verify:
      return doc;
    case Command::router:
      doc["router"] = {{"r", config.router_r}, {"s", config.router_s}};
      break;
    case Command::simulate:
    case Command::protocol:
      doc["bond_mask"] = config.bond_mask;
      if (config.schedule == ScheduleKind::events) {
        json events = json::array();
        for (const PulseEvent& ev : config.events) {
          events.push_back({{"time", ev.time}, {"targets", ev.targets}, {"sign", ev.sign},
                            {"angle", ev.angle_magnitude}});
        }
        doc["schedule"] = {{"events", events}};
      } else {
        doc["schedule"] = config.schedule == ScheduleKind::paper ? "paper" : "none";
      }
      break;
  }
  if (config.t_max) doc["t_max"] = *config.t_max;
  if (config.n_samples) doc["samples"] = *config.n_samples;
  if (config.pairs) {
    json pairs = json::array();
    for (const SpinPair& p : *config.pairs) pairs.push_back({p.first, p.second});
    doc["pairs"] = pairs;
  } else {
    doc["pairs"] = "all";
  }
  return doc;
}

RunConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw UsageError("config: expected a JSON object");
  RunConfig config;
  auto field = [&](const char* name, auto&& apply) {
    if (!doc.contains(name)) return;
    try {
      apply(doc.at(name));
    } catch (const json::exception& e) {
      throw UsageError(std::string(name) + ": " + e.what());
    }
  };
  field("command", [&](const json& v) { config.command = parse_command(v.get<std::string>()); });
  field("spins", [&](const json& v) { config.n_spins = v.get<int>(); });
  field("angle", [&](const json& v) { config.angle = time_from_json(v, "angle"); });
  field("format", [&](const json& v) {
    const auto s = v.get<std::string>();
    if (s != "csv" && s != "json") throw UsageError("format: expected csv or json");
    config.format = s == "csv" ? OutputFormat::csv : OutputFormat::json;
  });
  field("bond_mask", [&](const json& v) { config.bond_mask = v.get<std::string>(); });
  field("schedule", [&](const json& v) {
    if (v.is_string()) {
      const auto s = v.get<std::string>();
      if (s == "paper") config.schedule = ScheduleKind::paper;
      else if (s == "none") config.schedule = ScheduleKind::none;
      else throw UsageError("schedule: expected 'paper', 'none' or an events object");
    } else {
      config.schedule = ScheduleKind::events;
      config.events = parse_schedule(v, config.angle);
    }
  });
  field("t_max", [&](const json& v) { config.t_max = time_from_json(v, "t_max"); });
  field("samples", [&](const json& v) { config.n_samples = v.get<int>(); });
  field("pairs", [&](const json& v) {
    if (v.is_string()) {
      config.pairs = parse_pairs(v.get<std::string>());
    } else {
      std::vector<SpinPair> pairs;
      for (const json& p : v) pairs.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
      config.pairs = pairs;
    }
  });
  field("router", [&](const json& v) {
    config.router_r = v.at("r").get<int>();
    config.router_s = v.at("s").get<int>();
  });
  field("grid", [&](const json& v) {
    config.t1 = axis_from_json(v.at("t1"), "grid.t1");
    config.t2 = axis_from_json(v.at("t2"), "grid.t2");
  });
  field("eval_time", [&](const json& v) { config.eval_time = time_from_json(v, "eval_time"); });
  field("threads", [&](const json& v) { config.threads = v.get<int>(); });
  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config '" + path + "': " + e.what());
  }
  return config_from_json(doc);
}

void save_config_file(const RunConfig& config, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write config file '" + path + "'");
  out << to_json(config).dump(2) << '\n';
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::vector<double> sample_grid(double t_max, int n_samples) {
  if (n_samples < 1) throw ArgumentError("need at least one sample");
  if (n_samples == 1) return {0.0};
  std::vector<double> times(static_cast<std::size_t>(n_samples));
  for (int k = 0; k < n_samples; ++k) times[k] = t_max * k / (n_samples - 1);
  return times;
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace pulsechain::cli
