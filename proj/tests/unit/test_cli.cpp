#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "orliczlab/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kExamples = ORLICZLAB_EXAMPLES_DIR;

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "orliczlab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out;
  std::ostringstream err;
  const int code = orliczlab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("orliczlab_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string example(const std::string& name) { return (kExamples / name).string(); }

// Solves e^{y^2} - 1 - y^2 = c by bisection.
double phi2_inverse(double c) {
  double lo = 0.0;
  double hi = 4.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::exp(mid * mid) - 1.0 - mid * mid < c ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(Cli, DiskNormMatchesClosedForm) {
  const auto r = run_cli({"orlicz-norm", "--field", example("disk.csv"), "--p", "2", "--kappa", "1.0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  // Unit disk of height 1: pi phi_2(1/lambda) = kappa.
  EXPECT_NEAR(j["luxemburg_norm"].get<double>(), 1.0 / phi2_inverse(1.0 / std::numbers::pi), 1e-9);
}

TEST(Cli, DecomposeTwoBubbles) {
  const auto dir = fresh_dir("decompose");
  const auto r = run_cli({"--out-dir", dir.string(), "decompose", "--seq", example("twobubble.json"), "--eps", "0.05"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(orliczlab::read_text(dir / "decomposition.json"));
  ASSERT_EQ(j["levels"].size(), 2u);
  EXPECT_EQ(json::parse(r.out), j);
  for (const auto& level : j["levels"]) EXPECT_TRUE(fs::exists(dir / level["profile_path"].get<std::string>()));
  EXPECT_TRUE(fs::exists(dir / "profiles.plt"));
  EXPECT_TRUE(fs::exists(dir / "profiles.dat"));
}

TEST(Cli, KgRunZeroDataGivesZeroEnergies) {
  const auto dir = fresh_dir("kgzero");
  const auto r = run_cli({"--out-dir", dir.string(), "kg-run", "--config", example("zero.cfg"), "--snapshots"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream csv(orliczlab::read_text(dir / "trajectory.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "t,E_kin,E_grad,E_pot,E_total,u_Linf,holder14,lux_norm");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    std::istringstream fields(line.substr(line.find(',') + 1));
    std::string v;
    while (std::getline(fields, v, ',')) EXPECT_EQ(orliczlab::parse_double(v), 0.0) << line;
  }
  EXPECT_GT(rows, 1);
  EXPECT_TRUE(fs::exists(dir / "snapshot_0.csv"));
  EXPECT_EQ(orliczlab::RunConfig::read(dir / "run.cfg"), orliczlab::RunConfig::read(example("zero.cfg")));
}

TEST(Cli, OutputsAreByteIdentical) {
  const auto a = fresh_dir("det_a");
  const auto b = fresh_dir("det_b");
  for (const auto& dir : {a, b}) {
    ASSERT_EQ(run_cli({"--out-dir", dir.string(), "bubble", "--alpha", "20"}).code, 0);
    ASSERT_EQ(run_cli({"--out-dir", dir.string(), "bubble", "--alpha", "3", "--format", "2d", "--core", "0.2", "0.1",
                       "--grid-points", "41"})
                  .code,
              0);
  }
  for (const char* name : {"bubble.csv", "bubble.dat", "bubble.plt", "bubble2d.csv"}) {
    EXPECT_EQ(orliczlab::read_text(a / name), orliczlab::read_text(b / name)) << name;
  }
  const auto r1 = run_cli({"--out-dir", a.string(), "rearrange", "--field", (a / "bubble2d.csv").string()});
  const auto r2 = run_cli({"--out-dir", b.string(), "rearrange", "--field", (a / "bubble2d.csv").string()});
  ASSERT_EQ(r1.code, 0) << r1.err;
  EXPECT_EQ(r1.out, r2.out);
  EXPECT_EQ(orliczlab::read_text(a / "rearranged.csv"), orliczlab::read_text(b / "rearranged.csv"));
}

TEST(Cli, CalibrateKappaApproachesFourPi) {
  const auto r = run_cli({"calibrate-kappa", "--ds", "0.015625"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json::parse(r.out)["kappa"].get<double>() / (4.0 * std::numbers::pi), 1.0, 1e-3);
}

TEST(Cli, TmCheckReportsFiniteValue) {
  const auto r = run_cli({"tm-check", "--field", example("disk.csv"), "--alpha", "6.2831853"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["command"], "tm-check");
}

TEST(Cli, ErrorsMapToDistinctExitCodes) {
  const auto missing = run_cli({"orlicz-norm", "--field", "/nonexistent/field.csv"});
  EXPECT_EQ(missing.code, 10);
  const auto record = json::parse(missing.err);
  EXPECT_EQ(record["error"]["code"], "io-error");
  EXPECT_EQ(record["error"]["exit_code"], 10);

  EXPECT_EQ(run_cli({}).code, 9);
  EXPECT_EQ(run_cli({"orlicz-norm", "--bogus"}).code, 9);
  EXPECT_EQ(run_cli({"orlicz-norm", "--field", example("disk.csv"), "--kappa", "-1"}).code, 9);

  const auto dir = fresh_dir("errors");
  orliczlab::write_text(dir / "cfl.cfg", "R = 4\ndr = 0.0625\ndt = 0.05\nT = 1\np = 1\ndata = zero\n");
  EXPECT_EQ(run_cli({"--out-dir", dir.string(), "kg-run", "--config", (dir / "cfl.cfg").string()}).code, 7);
  orliczlab::write_text(dir / "bad.cfg", "R = 4\nR = 5\n");
  EXPECT_EQ(run_cli({"--out-dir", dir.string(), "kg-run", "--config", (dir / "bad.cfg").string()}).code, 9);
  EXPECT_EQ(run_cli({"--out-dir", dir.string(), "bubble", "--format", "polar"}).code, 2);
}

TEST(Cli, HelpExitsZero) {
  const auto r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("decompose"), std::string::npos);
}
