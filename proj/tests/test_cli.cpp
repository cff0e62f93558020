#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "pulsechain/cli.hpp"
#include "pulsechain/oracle.hpp"

using namespace pulsechain;
using namespace pulsechain::cli;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
  }
  double number(std::size_t row, const std::string& name) const { return std::stod(rows[row][column(name)]); }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::stringstream ss(text);
  std::string line;
  std::getline(ss, line);
  csv.header = split(line);
  while (std::getline(ss, line)) csv.rows.push_back(split(line));
  return csv;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pulsechain_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "pulsechain");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return main_entry(static_cast<int>(argv.size()), argv.data());
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST(CliParsing, Times) {
  EXPECT_DOUBLE_EQ(parse_time("2.5"), 2.5);
  EXPECT_DOUBLE_EQ(parse_time("pi"), pi);
  EXPECT_DOUBLE_EQ(parse_time("3pi"), 3 * pi);
  EXPECT_DOUBLE_EQ(parse_time("0.5*pi"), 0.5 * pi);
  EXPECT_DOUBLE_EQ(parse_time("1e-3"), 1e-3);
  EXPECT_THROW(parse_time("abc"), UsageError);
  EXPECT_THROW(parse_time(""), UsageError);
}

TEST(CliParsing, PairsAndGrid) {
  EXPECT_FALSE(parse_pairs("all").has_value());
  const auto pairs = *parse_pairs("1-4,2-3");
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[0], (SpinPair{1, 4}));
  EXPECT_THROW(parse_pairs("1:4"), UsageError);
  const auto [t1, t2] = parse_grid("0.1:5:50,5.1:9:40");
  EXPECT_EQ(t1.count, 50);
  EXPECT_DOUBLE_EQ(t2.min, 5.1);
  EXPECT_THROW(parse_grid("0.1:5:50"), UsageError);
}

TEST_F(CliTest, SimulateWithoutKicksFollowsEdgeFormula) {
  ASSERT_EQ(run({"simulate", "--spins", "3", "--t-max", "2pi", "--pairs", "1-2", "--out", path("a.csv")}), kOk);
  const auto csv = parse_csv(read_file(path("a.csv")));
  EXPECT_EQ(csv.header, (std::vector<std::string>{"time", "C_1_2", "purity_1N", "norm", "energy"}));
  ASSERT_EQ(csv.rows.size(), 129u);  // 64 samples per pi, closed grid
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    EXPECT_NEAR(csv.number(r, "C_1_2"), std::abs(std::sin(csv.number(r, "time"))) / 2, 1e-12);
  }
}

TEST_F(CliTest, ProtocolFourSpins) {
  ASSERT_EQ(run({"protocol", "--spins", "4", "--t-max", "6pi", "--samples", "601", "--out", path("p.csv")}), kOk);
  const auto csv = parse_csv(read_file(path("p.csv")));
  double peak3 = 0, peak5 = 0;
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const double t = csv.number(r, "time"), c = csv.number(r, "C_1_4");
    if (t < 2 * pi) EXPECT_LT(c, 1e-9) << t;
    if (std::abs(t - 3 * pi) < 1e-9) peak3 = c;
    if (std::abs(t - 5 * pi) < 1e-9) peak5 = c;
  }
  EXPECT_NEAR(peak3, 1.0, 1e-9);
  EXPECT_NEAR(peak5, 1.0, 1e-9);
}

TEST_F(CliTest, ProtocolSevenSpins) {
  ASSERT_EQ(run({"protocol", "--spins", "7", "--t-max", "9pi", "--samples", "901", "--pairs", "1-7", "--out",
                 path("p.csv")}),
            kOk);
  const auto csv = parse_csv(read_file(path("p.csv")));
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const double t = csv.number(r, "time"), c = csv.number(r, "C_1_7");
    if (t < 5 * pi) EXPECT_LT(c, 1e-9) << t;
    if (std::abs(t - 6 * pi) < 1e-9 || std::abs(t - 8 * pi) < 1e-9) EXPECT_NEAR(c, 1.0, 1e-9) << t;
  }
}

TEST_F(CliTest, SweepPaperGrid) {
  ASSERT_EQ(run({"sweep", "--out", path("s.csv")}), kOk);
  const auto csv = parse_csv(read_file(path("s.csv")));
  EXPECT_EQ(csv.header, (std::vector<std::string>{"kind", "t1", "t2", "C_1_4"}));
  ASSERT_EQ(csv.rows.size(), 50u * 40u + 1);
  const auto& last = csv.rows.back();
  EXPECT_EQ(last[0], "argmax");
  EXPECT_LE(std::abs(std::stod(last[1]) - pi), 0.1);
  EXPECT_LE(std::abs(std::stod(last[2]) - 2 * pi), 0.1);
  EXPECT_GT(std::stod(last[3]), 0.99);
}

TEST_F(CliTest, SweepDegenerateGridWritesNulls) {
  ASSERT_EQ(run({"sweep", "--grid", "2:2:1,1:3:2", "--eval-time", "3pi", "--out", path("s.csv")}), kOk);
  const auto csv = parse_csv(read_file(path("s.csv")));
  ASSERT_EQ(csv.rows.size(), 3u);
  EXPECT_EQ(csv.rows[0][3], "");  // t2 = 1 < t1 = 2
  EXPECT_FALSE(csv.rows[1][3].empty());

  ASSERT_EQ(run({"sweep", "--grid", "2:2:1,1:3:2", "--format", "json", "--out", path("s.json")}), kOk);
  const auto doc = nlohmann::json::parse(read_file(path("s.json")));
  EXPECT_TRUE(doc["values"][0][0].is_null());
  EXPECT_TRUE(doc["values"][0][1].is_number());
}

TEST_F(CliTest, SweepEvalTimeBeforeKicksIsUsageError) {
  EXPECT_EQ(run({"sweep", "--eval-time", "8", "--out", path("s.csv")}), kUsageError);
  EXPECT_FALSE(fs::exists(path("s.csv")));
}

TEST_F(CliTest, VerifyReportsEachFormula) {
  // Every closed form passes; the printed middle-spin factors of the final
  // state do not match the dynamics, so the full-state check fails.
  ASSERT_EQ(run({"verify", "--spins", "5", "--format", "json", "--out", path("v.json")}), kVerifyFailed);
  const auto doc = nlohmann::json::parse(read_file(path("v.json")));
  for (const auto& check : doc["checks"]) {
    const std::string name = check["formula"];
    if (name.rfind("final_state_full", 0) == 0) {
      EXPECT_FALSE(check["passed"].get<bool>());
      EXPECT_NEAR(check["max_deviation"].get<double>(), 1.0 - 1.0 / 8.0, 1e-9);
    } else {
      EXPECT_TRUE(check["passed"].get<bool>()) << name;
      EXPECT_LT(check["max_deviation"].get<double>(), 1e-9) << name;
    }
  }
  ASSERT_EQ(run({"verify", "--spins", "3", "--out", path("v3.txt")}), kVerifyFailed);
  EXPECT_NE(read_file(path("v3.txt")).find("PASS three_spin_ends C_1_3"), std::string::npos);
  EXPECT_EQ(run({"verify", "--spins", "2"}), kUsageError);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({"simulate", "--spins", "4", "--out", (dir_ / "missing" / "x.csv").string()}), kIoError);
  EXPECT_EQ(run({"simulate", "--spins", "4", "--bond-mask", "10"}), kUsageError);
  EXPECT_EQ(run({"simulate", "--spins", "4", "--pairs", "1-5"}), kUsageError);
  EXPECT_EQ(run({"router", "--spins", "5", "--router", "2,3"}), kUsageError);
  EXPECT_EQ(run({"bogus"}), kUsageError);
  EXPECT_EQ(run({"simulate", "--config", path("nope.json")}), kIoError);
}

TEST_F(CliTest, RouterRun) {
  ASSERT_EQ(run({"router", "--spins", "7", "--router", "2,5", "--t-max", "4pi", "--samples", "5", "--pairs", "2-5",
                 "--out", path("r.csv")}),
            kOk);
  const auto csv = parse_csv(read_file(path("r.csv")));
  EXPECT_NEAR(csv.number(3, "C_2_5"), 1.0, 1e-9);
}

TEST_F(CliTest, ScheduleFile) {
  {
    std::ofstream out(path("sched.json"));
    out << R"({"events": [{"time": "pi", "targets": [1, 2], "sign": 1}]})";
  }
  ASSERT_EQ(run({"simulate", "--spins", "3", "--schedule", path("sched.json"), "--t-max", "2pi", "--samples", "3",
                 "--pairs", "1-3", "--out", path("a.csv")}),
            kOk);
  const auto csv = parse_csv(read_file(path("a.csv")));
  EXPECT_NEAR(csv.number(2, "C_1_3"), 1.0, 1e-12);
  {
    std::ofstream out(path("bad.json"));
    out << R"({"events": [{"time": 2, "targets": [1]}, {"time": 1, "targets": [2]}]})";
  }
  EXPECT_EQ(run({"simulate", "--spins", "3", "--schedule", path("bad.json")}), kUsageError);
}

TEST_F(CliTest, ConfigRoundTripIsByteIdentical) {
  for (const std::string cmd : {"protocol", "sweep", "router"}) {
    std::vector<std::string> args{cmd, "--spins", "6", "--format", "json", "--out", path("first.out"),
                                  "--save-config", path("cfg.json")};
    if (cmd == "router") args.insert(args.end(), {"--router", "2,5"});
    if (cmd == "sweep") args.insert(args.end(), {"--grid", "0.5:3:6,3.5:6:5", "--eval-time", "7"});
    ASSERT_EQ(run(args), kOk) << cmd;
    ASSERT_EQ(run({cmd, "--config", path("cfg.json"), "--out", path("second.out")}), kOk) << cmd;
    EXPECT_EQ(read_file(path("first.out")), read_file(path("second.out"))) << cmd;
  }
}

TEST_F(CliTest, FlagsOverrideConfigFile) {
  ASSERT_EQ(run({"protocol", "--spins", "5", "--samples", "10", "--save-config", path("cfg.json"), "--out",
                 path("a.csv")}),
            kOk);
  ASSERT_EQ(run({"protocol", "--config", path("cfg.json"), "--samples", "4", "--out", path("b.csv")}), kOk);
  EXPECT_EQ(parse_csv(read_file(path("b.csv"))).rows.size(), 4u);
  EXPECT_EQ(parse_csv(read_file(path("b.csv"))).header.size(), 1u + 10u + 3u);
}

TEST_F(CliTest, InvalidConfigNamesField) {
  {
    std::ofstream out(path("cfg.json"));
    out << R"({"spins": "many"})";
  }
  testing::internal::CaptureStderr();
  EXPECT_EQ(run({"simulate", "--config", path("cfg.json")}), kUsageError);
  EXPECT_NE(testing::internal::GetCapturedStderr().find("spins"), std::string::npos);
}

TEST_F(CliTest, CsvAndJsonCarrySameNumbers) {
  ASSERT_EQ(run({"protocol", "--spins", "4", "--samples", "50", "--out", path("a.csv")}), kOk);
  ASSERT_EQ(run({"protocol", "--spins", "4", "--samples", "50", "--format", "json", "--out", path("a.json")}), kOk);
  const auto csv = parse_csv(read_file(path("a.csv")));
  const auto doc = nlohmann::json::parse(read_file(path("a.json")));
  ASSERT_EQ(doc["records"].size(), csv.rows.size());
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& rec = doc["records"][r];
    EXPECT_EQ(csv.number(r, "time"), rec["time"].get<double>());
    EXPECT_EQ(csv.number(r, "purity_1N"), rec["purity_1N"].get<double>());
    EXPECT_EQ(csv.number(r, "norm"), rec["norm"].get<double>());
    EXPECT_EQ(csv.number(r, "energy"), rec["energy"].get<double>());
    for (const auto& [name, value] : rec["pair_concurrences"].items()) {
      EXPECT_EQ(csv.number(r, name), value.get<double>()) << name;
    }
  }
}

TEST_F(CliTest, OutputIsDeterministic) {
  ASSERT_EQ(run({"protocol", "--spins", "5", "--out", path("a.csv")}), kOk);
  ASSERT_EQ(run({"protocol", "--spins", "5", "--out", path("b.csv")}), kOk);
  EXPECT_EQ(read_file(path("a.csv")), read_file(path("b.csv")));
  EXPECT_EQ(read_file(path("a.csv")).find('\r'), std::string::npos);
}
