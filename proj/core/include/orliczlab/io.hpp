#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "orliczlab/extraction.hpp"
#include "orliczlab/field2d.hpp"
#include "orliczlab/kg.hpp"
#include "orliczlab/log_radial_field.hpp"
#include "orliczlab/profiles.hpp"

namespace orliczlab {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);
double parse_double(std::string_view text);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

/// CSV `s,v`, rows in increasing s with uniform spacing (checked to 1e-12 ds).
LogRadialField parse_log_radial_csv(std::string_view text);
std::string log_radial_csv(const LogRadialField& u);
LogRadialField read_log_radial_csv(const std::filesystem::path& path);
void write_log_radial_csv(const std::filesystem::path& path, const LogRadialField& u);

/// CSV header `nx,ny,h,ox,oy`, one line with those values, then row-major values one per line.
Field2D parse_field2d_csv(std::string_view text);
std::string field2d_csv(const Field2D& f);
Field2D read_field2d_csv(const std::filesystem::path& path);
void write_field2d_csv(const std::filesystem::path& path, const Field2D& f);

/// CSV `s,psi` on a uniform grid starting at s = 0.
Profile parse_profile_csv(std::string_view text);
std::string profile_csv(const Profile& psi);
Profile read_profile_csv(const std::filesystem::path& path);
void write_profile_csv(const std::filesystem::path& path, const Profile& psi);

/// A sequence file: {"n_list": [...], "ds": ..., "triplets": [triplet, ...]} where each triplet is
/// {"scale": {"form": "power"|"geometric", "c", "gamma"|"beta"},
///  "core": [x, y] | {"form": "exponential", "base": [x, y], "c", "rate", "gamma"},
///  "profile": "file.csv" | {"moser": a, "shift": s0, "s_max": S, "amplitude": c}}.
/// Relative profile paths resolve against base_dir.
struct SequenceSpec {
  std::vector<ConcentrationTriplet> triplets;
  std::vector<double> n_list{10, 30, 100, 300, 1000};
  GridOptions grid{};
};

SequenceSpec parse_sequence_json(std::string_view text, const std::filesystem::path& base_dir = {});
SequenceSpec read_sequence_json(const std::filesystem::path& path);
std::string triplet_json(const ConcentrationTriplet& t, const std::string& profile_path);

/// {"levels": [{scale_per_n, profile_path, residual_orlicz, stability}], "termination_reason"}.
std::string decomposition_json(const DecompositionResult& result,
                               const std::vector<std::string>& profile_paths);

/// `t,E_kin,E_grad,E_pot,E_total,u_Linf,holder14,lux_norm`.
std::string trajectory_csv(const std::vector<TrajectoryRow>& rows);
/// `r,u,ut`.
std::string snapshot_csv(const KGState& state);

/// Flat `key = value` configuration; `#` starts a comment. Keys are unique and
/// emitted sorted, so parse(emit(c)) == c.
class RunConfig {
 public:
  static RunConfig parse(std::string_view text);
  static RunConfig read(const std::filesystem::path& path);
  std::string emit() const;

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::string& get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  int get_int_or(const std::string& key, int fallback) const;

  void set(const std::string& key, std::string value);
  void set(const std::string& key, double value);
  void set(const std::string& key, int value);

  const std::map<std::string, std::string>& values() const noexcept { return values_; }
  bool operator==(const RunConfig&) const = default;

 private:
  std::map<std::string, std::string> values_;
};

/// Klein-Gordon run parameters: R, dr, dt, T, p, save_every and a data spec
/// `data = zero | bump` with data.amplitude, data.radius, data.velocity and
/// data.n (amplitude factor n^{-1/2}). Bump: A (1 - (r/rho)^2)^4 on r < rho.
struct KgRunSpec {
  EvolveOptions options;
  CauchyData data;
};

KgRunSpec kg_run_spec(const RunConfig& config);

}  // namespace orliczlab
