#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "orliczlab/errors.hpp"
#include "orliczlab/extraction.hpp"
#include "orliczlab/io.hpp"
#include "orliczlab/kg.hpp"
#include "orliczlab/orlicz.hpp"
#include "orliczlab/profiles.hpp"
#include "orliczlab/rearrange.hpp"
#include "plot.hpp"

namespace orliczlab::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

const double kSqrt4Pi = std::sqrt(4.0 * std::numbers::pi);

fs::path default_out_dir() {
  const char* env = std::getenv("ORLICZLAB_OUT");
  return env && *env ? fs::path(env) : fs::path(".");
}

void print(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

struct NormArgs {
  std::string field;
  int p = 1;
  double kappa = 1.0;
};

void orlicz_norm(const NormArgs& a, std::ostream& out) {
  const auto u = read_log_radial_csv(a.field);
  const OrliczParams params{a.p, a.kappa, 0.0};
  params.validate();
  const double lux = luxemburg_norm(u, params);
  const double h1 = h1_norm(u);
  print(out, ordered_json{{"command", "orlicz-norm"},
                          {"field", a.field},
                          {"p", a.p},
                          {"kappa", a.kappa},
                          {"luxemburg_norm", lux},
                          {"h1_norm", h1},
                          {"grad_l2", std::sqrt(grad_l2_norm_sq(u))},
                          {"l2", std::sqrt(l2_norm_sq(u))},
                          {"embedding_ratio", h1 > 0.0 ? lux * kSqrt4Pi / h1 : 0.0}});
}

struct TmArgs {
  std::string field;
  double alpha = 4.0 * std::numbers::pi;
  int p = 1;
};

void tm_check(const TmArgs& a, std::ostream& out) {
  const auto u = read_log_radial_csv(a.field);
  const double grad = std::sqrt(grad_l2_norm_sq(u));
  const double tm = tm_functional(u, a.alpha, a.p);
  const double lq = std::pow(lq_norm(u, 2.0 * a.p), 2.0 * a.p);
  print(out, ordered_json{{"command", "tm-check"},
                          {"field", a.field},
                          {"alpha", a.alpha},
                          {"p", a.p},
                          {"grad_l2", grad},
                          {"gradient_in_unit_ball", grad <= 1.0 + 1e-12},
                          {"tm_functional", tm},
                          {"l2p_norm_pow", lq},
                          {"ratio", lq > 0.0 ? tm / lq : 0.0}});
}

struct RearrangeArgs {
  std::string field;
  double ds = 1.0 / 512.0;
};

void rearrange(const RearrangeArgs& a, const fs::path& dir, std::ostream& out) {
  const auto f = read_field2d_csv(a.field);
  const auto star = symmetric_decreasing_rearrangement(f, {a.ds});
  write_log_radial_csv(dir / "rearranged.csv", star);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = star.size(); i-- > 0;) rows.push_back({std::exp(-star.s_at(i)), star[i]});
  write_plot(dir, "rearranged", {"r", "u_star"}, rows, "r", "u*", {{"u*", 1, 2}});

  const double grad_in = f.grad_l2_norm();
  const double grad_out = std::sqrt(grad_l2_norm_sq(star));
  ordered_json lq = ordered_json::object();
  for (double q : {2.0, 4.0, 8.0}) {
    lq[format_double(q)] = {{"input", std::pow(f.lq_norm_q(q), 1.0 / q)}, {"rearranged", lq_norm(star, q)}};
  }
  print(out, ordered_json{{"command", "rearrange"},
                          {"field", a.field},
                          {"output", "rearranged.csv"},
                          {"grad_in", grad_in},
                          {"grad_out", grad_out},
                          {"polya_szego_ratio", grad_in > 0.0 ? grad_out / grad_in : 0.0},
                          {"lq_norms", lq}});
}

struct BubbleArgs {
  double alpha = 100.0;
  double moser = 1.0;
  double shift = 0.0;
  double s_max = 2.0;
  std::string profile;
  std::string format = "radial";
  std::vector<double> core{0.0, 0.0};
  std::size_t grid_points = 201;
  double half_width = 1.0;
  double ds = 1.0 / 256.0;
  int p = 1;
  double kappa = 1.0;
};

void bubble(const BubbleArgs& a, const fs::path& dir, std::ostream& out) {
  const auto psi = a.profile.empty()
                       ? (a.shift > 0.0 ? shifted_moser_profile(a.moser, a.shift, a.s_max)
                                        : moser_profile(a.moser, a.s_max))
                       : read_profile_csv(a.profile);
  ordered_json j{{"command", "bubble"}, {"alpha", a.alpha}, {"format", a.format}};
  j["limit_norm"] = concentration_limit_norm(psi);
  if (a.format == "radial") {
    GridOptions grid;
    grid.ds = a.ds;
    const auto g = elementary_concentration(psi, a.alpha, grid);
    write_log_radial_csv(dir / "bubble.csv", g);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < g.size(); ++i) rows.push_back({g.s_at(i), g[i]});
    write_plot(dir, "bubble", {"s", "v"}, rows, "s = -log r", "v(s)", {{"bubble", 1, 2}});
    j["output"] = "bubble.csv";
    j["luxemburg_norm"] = luxemburg_norm(g, {a.p, a.kappa, 0.0});
    j["grad_l2"] = std::sqrt(grad_l2_norm_sq(g));
  } else if (a.format == "2d") {
    if (a.core.size() != 2) throw InvalidArgument("bubble: --core needs two values");
    const auto f = elementary_concentration_2d(psi, a.alpha, {a.core[0], a.core[1]}, a.grid_points, a.half_width);
    write_field2d_csv(dir / "bubble2d.csv", f);
    j["output"] = "bubble2d.csv";
    j["core"] = a.core;
    j["grad_l2"] = f.grad_l2_norm();
  } else {
    throw InvalidArgument("bubble: --format must be radial or 2d");
  }
  j["p"] = a.p;
  j["kappa"] = a.kappa;
  print(out, j);
}

struct DecomposeArgs {
  std::string seq;
  double eps = 0.05;
  int max_levels = 4;
};

void decompose_cmd(const DecomposeArgs& a, const fs::path& dir, std::ostream& out) {
  const auto spec = read_sequence_json(a.seq);
  const auto seq = concentration_sequence(spec.triplets, spec.n_list, spec.grid);
  const auto result = decompose(seq, a.eps, a.max_levels);

  std::vector<std::string> paths;
  std::vector<std::vector<double>> rows;
  std::vector<PlotSeries> series;
  for (std::size_t l = 0; l < result.levels.size(); ++l) {
    const auto name = "profile_" + std::to_string(l + 1) + ".csv";
    const auto& psi = result.levels[l].recovered.profile;
    write_profile_csv(dir / name, psi);
    paths.push_back(name);
    series.push_back({"level " + std::to_string(l + 1), 1, static_cast<int>(l) + 2});
  }
  if (!result.levels.empty()) {
    const auto& first = result.levels.front().recovered.profile;
    for (std::size_t i = 0; i < first.size(); ++i) {
      std::vector<double> row{first.s_at(i)};
      for (const auto& level : result.levels) row.push_back(level.recovered.profile.at(first.s_at(i)));
      rows.push_back(row);
    }
    std::vector<std::string> columns{"y"};
    for (std::size_t l = 0; l < result.levels.size(); ++l) columns.push_back("psi_" + std::to_string(l + 1));
    write_plot(dir, "profiles", columns, rows, "y", "psi(y)", series);
  }
  const auto text = decomposition_json(result, paths);
  write_text(dir / "decomposition.json", text);
  out << text;
}

struct KgArgs {
  std::string config;
  bool snapshots = false;
};

void kg_run(const KgArgs& a, const fs::path& dir, std::ostream& out) {
  const auto config = RunConfig::read(a.config);
  const auto spec = kg_run_spec(config);
  const auto dyn_name = config.get_or("dynamics", "nonlinear");
  if (dyn_name != "nonlinear" && dyn_name != "free") throw ParseError("kg config: dynamics must be nonlinear or free");
  const auto dynamics = dyn_name == "free" ? Dynamics::Free : Dynamics::Nonlinear;
  const OrliczParams params{config.get_int_or("orlicz_p", spec.options.p), config.get_double_or("kappa", 1.0), 0.0};
  params.validate();

  const auto traj = evolve(spec.data, spec.options, dynamics);
  const auto rows = trajectory_table(traj, params);
  write_text(dir / "trajectory.csv", trajectory_csv(rows));
  write_text(dir / "run.cfg", config.emit());
  std::vector<std::vector<double>> dat;
  for (const auto& r : rows) dat.push_back({r.t, r.kinetic, r.gradient, r.potential, r.total});
  write_plot(dir, "energy", {"t", "E_kin", "E_grad", "E_pot", "E_total"}, dat, "t", "energy",
             {{"kinetic", 1, 2}, {"gradient", 1, 3}, {"potential", 1, 4}, {"total", 1, 5}});
  if (a.snapshots) {
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
      write_text(dir / ("snapshot_" + std::to_string(k) + ".csv"), snapshot_csv(traj.state_at(k)));
    }
  }
  const double e0 = rows.front().total;
  double drift = 0.0;
  for (const auto& r : rows) drift = std::max(drift, std::abs(r.total - e0));
  print(out, ordered_json{{"command", "kg-run"},
                          {"config", a.config},
                          {"dynamics", dyn_name},
                          {"nodes", traj.state_at(0).nodes()},
                          {"snapshots", traj.snapshots.size()},
                          {"initial_energy", e0},
                          {"classification", to_string(traj.snapshots.front().energy.classification)},
                          {"max_energy_drift", drift},
                          {"relative_energy_drift", e0 > 0.0 ? drift / e0 : 0.0},
                          {"output", "trajectory.csv"}});
}

struct LinArgs {
  std::string config;
  std::vector<double> n_values{1, 4, 16};
};

void linearizability_cmd(const LinArgs& a, std::ostream& out) {
  const auto base = RunConfig::read(a.config);
  const OrliczParams params{base.get_int_or("orlicz_p", base.get_int_or("p", 1)), base.get_double_or("kappa", 1.0),
                            0.0};
  params.validate();
  ordered_json runs = ordered_json::array();
  for (double n : a.n_values) {
    auto config = base;
    config.set("data.n", n);
    const auto spec = kg_run_spec(config);
    const auto rep = linearizability(spec.data, spec.options, params);
    runs.push_back({{"n", n},
                    {"initial_energy", rep.initial.energy},
                    {"energy_error", rep.initial.error},
                    {"classification", to_string(rep.initial.classification)},
                    {"kinetic_gap", rep.gap},
                    {"max_free_luxemburg", rep.max_free_luxemburg},
                    {"smallness_holds", rep.max_free_luxemburg < 1.0 / kSqrt4Pi}});
  }
  print(out, ordered_json{{"command", "linearizability"},
                          {"config", a.config},
                          {"threshold", 1.0 / kSqrt4Pi},
                          {"runs", runs}});
}

struct KappaArgs {
  int p = 1;
  double ds = 1.0 / 256.0;
};

void calibrate_kappa(const KappaArgs& a, std::ostream& out) {
  if (a.p < 1) throw InvalidArgument("calibrate-kappa: p must be >= 1");
  const auto family = kappa_calibration_family(a.ds);
  print(out, ordered_json{{"command", "calibrate-kappa"},
                          {"p", a.p},
                          {"kappa", kappa_lower_bound(family, a.p)},
                          {"family_size", family.size()}});
}

int report(std::ostream& err, int exit_code, const std::string& code, const std::string& message) {
  err << ordered_json{{"error", {{"code", code}, {"exit_code", exit_code}, {"message", message}}}}.dump() << "\n";
  return exit_code;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orlicz-space and exponential Klein-Gordon numerics"};
  app.require_subcommand(1);
  std::string out_dir = default_out_dir().string();
  app.add_option("--out-dir", out_dir, "Directory for output files (default: $ORLICZLAB_OUT or .)");

  NormArgs norm;
  auto* c_norm = app.add_subcommand("orlicz-norm", "Luxemburg norm of a log-radial field");
  c_norm->add_option("--field", norm.field, "LogRadialField CSV (s,v)")->required();
  c_norm->add_option("--p", norm.p, "Number of subtracted Taylor terms")->check(CLI::PositiveNumber);
  c_norm->add_option("--kappa", norm.kappa, "Level kappa")->check(CLI::PositiveNumber);

  TmArgs tm;
  auto* c_tm = app.add_subcommand("tm-check", "Trudinger-Moser functional and its L^{2p} ratio");
  c_tm->add_option("--field", tm.field, "LogRadialField CSV (s,v)")->required();
  c_tm->add_option("--alpha", tm.alpha, "Exponent alpha")->check(CLI::PositiveNumber);
  c_tm->add_option("--p", tm.p, "Number of subtracted Taylor terms")->check(CLI::PositiveNumber);

  RearrangeArgs re;
  auto* c_re = app.add_subcommand("rearrange", "Symmetric decreasing rearrangement of a Cartesian field");
  c_re->add_option("--field", re.field, "Field2D CSV")->required();
  c_re->add_option("--ds", re.ds, "Output log-grid step")->check(CLI::PositiveNumber);

  BubbleArgs bu;
  auto* c_bu = app.add_subcommand("bubble", "Generate an elementary concentration");
  c_bu->add_option("--alpha", bu.alpha, "Scale alpha")->check(CLI::PositiveNumber);
  c_bu->add_option("--moser", bu.moser, "Moser profile parameter a")->check(CLI::PositiveNumber);
  c_bu->add_option("--shift", bu.shift, "Null interval [0, shift) of the profile");
  c_bu->add_option("--s-max", bu.s_max, "Profile window")->check(CLI::PositiveNumber);
  c_bu->add_option("--profile", bu.profile, "Profile CSV (s,psi); overrides --moser");
  c_bu->add_option("--format", bu.format, "radial or 2d");
  c_bu->add_option("--core", bu.core, "Core x y (2d)")->expected(2);
  c_bu->add_option("--grid-points", bu.grid_points, "Points per side (2d)");
  c_bu->add_option("--half-width", bu.half_width, "Half width of the square (2d)")->check(CLI::PositiveNumber);
  c_bu->add_option("--ds", bu.ds, "Log-grid step (radial)")->check(CLI::PositiveNumber);
  c_bu->add_option("--p", bu.p, "Orlicz p")->check(CLI::PositiveNumber);
  c_bu->add_option("--kappa", bu.kappa, "Orlicz kappa")->check(CLI::PositiveNumber);

  DecomposeArgs de;
  auto* c_de = app.add_subcommand("decompose", "Profile decomposition of a concentration sequence");
  c_de->add_option("--seq", de.seq, "Sequence JSON")->required();
  c_de->add_option("--eps", de.eps, "Stop when the residual Orlicz norm is below eps")->check(CLI::PositiveNumber);
  c_de->add_option("--max-levels", de.max_levels, "Maximum number of levels")->check(CLI::PositiveNumber);

  KgArgs kg;
  auto* c_kg = app.add_subcommand("kg-run", "Evolve the radial Klein-Gordon equation");
  c_kg->add_option("--config", kg.config, "key = value run configuration")->required();
  c_kg->add_flag("--snapshots", kg.snapshots, "Also write r,u,ut snapshot CSVs");

  LinArgs li;
  auto* c_li = app.add_subcommand("linearizability", "Nonlinear versus free evolution along data.n");
  c_li->add_option("--config", li.config, "key = value run configuration")->required();
  c_li->add_option("--n", li.n_values, "Values of n (data scaled by n^-1/2)");

  KappaArgs ka;
  auto* c_ka = app.add_subcommand("calibrate-kappa", "Embedding constant over the trial family");
  c_ka->add_option("--p", ka.p, "Number of subtracted Taylor terms")->check(CLI::PositiveNumber);
  c_ka->add_option("--ds", ka.ds, "Log-grid step")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    return report(err, static_cast<int>(ErrorCode::Parse), error_code_name(ErrorCode::Parse), e.what());
  }

  try {
    const fs::path dir(out_dir);
    if (c_norm->parsed()) orlicz_norm(norm, out);
    if (c_tm->parsed()) tm_check(tm, out);
    if (c_re->parsed()) rearrange(re, dir, out);
    if (c_bu->parsed()) bubble(bu, dir, out);
    if (c_de->parsed()) decompose_cmd(de, dir, out);
    if (c_kg->parsed()) kg_run(kg, dir, out);
    if (c_li->parsed()) linearizability_cmd(li, out);
    if (c_ka->parsed()) calibrate_kappa(ka, out);
  } catch (const Error& e) {
    return report(err, static_cast<int>(e.code()), error_code_name(e.code()), e.what());
  } catch (const std::exception& e) {
    return report(err, 1, "internal", e.what());
  }
  return 0;
}

}  // namespace orliczlab::cli
