#include "orliczlab/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "orliczlab/errors.hpp"

namespace orliczlab {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

/// Non-empty lines with surrounding whitespace removed.
std::vector<std::string_view> lines(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

void expect_header(const std::vector<std::string_view>& rows, std::string_view header, const char* what) {
  if (rows.empty()) throw ParseError(std::string(what) + ": empty input");
  std::string compact;
  for (char c : rows.front()) {
    if (c != ' ') compact.push_back(c);
  }
  if (compact != header) {
    throw ParseError(std::string(what) + ": expected header '" + std::string(header) + "'");
  }
}

/// Two-column numeric table after the header.
void read_columns(const std::vector<std::string_view>& rows, std::vector<double>& a, std::vector<double>& b,
                  const char* what) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split(rows[i], ',');
    if (cells.size() != 2) {
      throw ParseError(std::string(what) + ": line " + std::to_string(i + 1) + " needs two columns");
    }
    a.push_back(parse_double(cells[0]));
    b.push_back(parse_double(cells[1]));
  }
}

/// Uniform spacing check; tolerance 1e-12 ds plus a few ulps of |s|.
double uniform_step(const std::vector<double>& s, const char* what) {
  if (s.size() < 2) throw ParseError(std::string(what) + ": need at least two rows");
  const double ds = (s.back() - s.front()) / static_cast<double>(s.size() - 1);
  if (!(ds > 0.0)) throw ParseError(std::string(what) + ": s must increase");
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double expected = s.front() + ds * static_cast<double>(i);
    const double tol = 1e-12 * ds + 8.0 * std::numeric_limits<double>::epsilon() * std::abs(expected);
    if (std::abs(s[i] - expected) > tol) {
      throw ParseError(std::string(what) + ": non-uniform spacing at row " + std::to_string(i + 2));
    }
  }
  return ds;
}

Point2 parse_point(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("core: expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

ScaleDescriptor parse_scale(const json& j) {
  ScaleDescriptor s;
  const auto form = j.at("form").get<std::string>();
  s.c = j.value("c", 1.0);
  if (form == "power") {
    s.form = ScaleDescriptor::Form::Power;
    s.gamma = j.at("gamma").get<double>();
  } else if (form == "geometric") {
    s.form = ScaleDescriptor::Form::Geometric;
    s.beta = j.at("beta").get<double>();
  } else {
    throw ParseError("scale: unknown form '" + form + "'");
  }
  s.validate();
  return s;
}

CoreDescriptor parse_core(const json& j) {
  CoreDescriptor c;
  if (j.is_null()) return c;
  if (j.is_array()) {
    c.base = parse_point(j);
    return c;
  }
  const auto form = j.value("form", std::string("exponential"));
  if (form != "exponential" && form != "fixed") throw ParseError("core: unknown form '" + form + "'");
  if (j.contains("base")) c.base = parse_point(j.at("base"));
  c.c = j.value("c", 0.0);
  c.rate = j.value("rate", 0.0);
  c.gamma = j.value("gamma", 1.0);
  return c;
}

Profile parse_profile(const json& j, const std::filesystem::path& base_dir) {
  if (j.is_string()) {
    std::filesystem::path path = j.get<std::string>();
    if (path.is_relative()) path = base_dir / path;
    return read_profile_csv(path);
  }
  if (!j.is_object() || !j.contains("moser")) throw ParseError("profile: expected a path or {\"moser\": a}");
  const double a = j.at("moser").get<double>();
  const double shift = j.value("shift", 0.0);
  const double s_max = j.value("s_max", a + shift + 1.0);
  const double dsig = j.value("dsig", 1.0 / 512.0);
  const double amplitude = j.value("amplitude", 1.0);
  auto psi = shift > 0.0 ? shifted_moser_profile(a, shift, s_max, dsig) : moser_profile(a, s_max, dsig);
  return amplitude == 1.0 ? psi : psi.scaled(amplitude);
}

json scale_to_json(const ScaleDescriptor& s) {
  if (s.form == ScaleDescriptor::Form::Power) return {{"form", "power"}, {"c", s.c}, {"gamma", s.gamma}};
  return {{"form", "geometric"}, {"c", s.c}, {"beta", s.beta}};
}

json core_to_json(const CoreDescriptor& c) {
  if (c.c == 0.0) return json::array({c.base.x, c.base.y});
  return {{"form", "exponential"},
          {"base", json::array({c.base.x, c.base.y})},
          {"c", c.c},
          {"rate", c.rate},
          {"gamma", c.gamma}};
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ParseError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

LogRadialField parse_log_radial_csv(std::string_view text) {
  const auto rows = lines(text);
  expect_header(rows, "s,v", "LogRadialField CSV");
  std::vector<double> s;
  std::vector<double> v;
  read_columns(rows, s, v, "LogRadialField CSV");
  const double ds = uniform_step(s, "LogRadialField CSV");
  return LogRadialField(s.front(), ds, std::move(v));
}

std::string log_radial_csv(const LogRadialField& u) {
  std::string out = "s,v\n";
  for (std::size_t i = 0; i < u.size(); ++i) {
    out += format_double(u.s_at(i)) + "," + format_double(u[i]) + "\n";
  }
  return out;
}

LogRadialField read_log_radial_csv(const std::filesystem::path& path) {
  return parse_log_radial_csv(read_text(path));
}

void write_log_radial_csv(const std::filesystem::path& path, const LogRadialField& u) {
  write_text(path, log_radial_csv(u));
}

Field2D parse_field2d_csv(std::string_view text) {
  const auto rows = lines(text);
  expect_header(rows, "nx,ny,h,ox,oy", "Field2D CSV");
  if (rows.size() < 2) throw ParseError("Field2D CSV: missing grid line");
  const auto grid = split(rows[1], ',');
  if (grid.size() != 5) throw ParseError("Field2D CSV: grid line needs five values");
  const double nx = parse_double(grid[0]);
  const double ny = parse_double(grid[1]);
  if (nx < 1 || ny < 1 || nx != std::floor(nx) || ny != std::floor(ny)) {
    throw ParseError("Field2D CSV: nx and ny must be positive integers");
  }
  std::vector<double> values;
  for (std::size_t i = 2; i < rows.size(); ++i) {
    for (auto cell : split(rows[i], ',')) values.push_back(parse_double(cell));
  }
  const auto count = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  if (values.size() != count) {
    throw ParseError("Field2D CSV: expected " + std::to_string(count) + " values, found " +
                     std::to_string(values.size()));
  }
  return Field2D(static_cast<std::size_t>(nx), static_cast<std::size_t>(ny), parse_double(grid[2]),
                 {parse_double(grid[3]), parse_double(grid[4])}, std::move(values));
}

std::string field2d_csv(const Field2D& f) {
  std::string out = "nx,ny,h,ox,oy\n";
  out += std::to_string(f.nx()) + "," + std::to_string(f.ny()) + "," + format_double(f.h()) + "," +
         format_double(f.origin().x) + "," + format_double(f.origin().y) + "\n";
  for (double v : f.values()) out += format_double(v) + "\n";
  return out;
}

Field2D read_field2d_csv(const std::filesystem::path& path) { return parse_field2d_csv(read_text(path)); }

void write_field2d_csv(const std::filesystem::path& path, const Field2D& f) { write_text(path, field2d_csv(f)); }

Profile parse_profile_csv(std::string_view text) {
  const auto rows = lines(text);
  expect_header(rows, "s,psi", "Profile CSV");
  std::vector<double> s;
  std::vector<double> psi;
  read_columns(rows, s, psi, "Profile CSV");
  const double ds = uniform_step(s, "Profile CSV");
  if (std::abs(s.front()) > 1e-12 * ds) throw ParseError("Profile CSV: grid must start at s = 0");
  return Profile(ds, std::move(psi));
}

std::string profile_csv(const Profile& psi) {
  std::string out = "s,psi\n";
  const auto values = psi.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += format_double(psi.s_at(i)) + "," + format_double(values[i]) + "\n";
  }
  return out;
}

Profile read_profile_csv(const std::filesystem::path& path) { return parse_profile_csv(read_text(path)); }

void write_profile_csv(const std::filesystem::path& path, const Profile& psi) {
  write_text(path, profile_csv(psi));
}

SequenceSpec parse_sequence_json(std::string_view text, const std::filesystem::path& base_dir) {
  SequenceSpec spec;
  try {
    const auto j = json::parse(text);
    if (j.contains("n_list")) spec.n_list = j.at("n_list").get<std::vector<double>>();
    if (j.contains("ds")) spec.grid.ds = j.at("ds").get<double>();
    if (j.contains("max_samples")) spec.grid.max_samples = j.at("max_samples").get<std::size_t>();
    for (const auto& t : j.at("triplets")) {
      spec.triplets.push_back(
          {parse_scale(t.at("scale")), parse_core(t.value("core", json())), parse_profile(t.at("profile"), base_dir)});
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("sequence JSON: ") + e.what());
  }
  if (spec.triplets.empty()) throw ParseError("sequence JSON: no triplets");
  if (spec.n_list.size() < 2) throw ParseError("sequence JSON: n_list needs at least two entries");
  if (!std::is_sorted(spec.n_list.begin(), spec.n_list.end())) {
    throw ParseError("sequence JSON: n_list must increase");
  }
  return spec;
}

SequenceSpec read_sequence_json(const std::filesystem::path& path) {
  return parse_sequence_json(read_text(path), path.parent_path());
}

std::string triplet_json(const ConcentrationTriplet& t, const std::string& profile_path) {
  const json j = {{"scale", scale_to_json(t.scale)}, {"core", core_to_json(t.core)}, {"profile", profile_path}};
  return j.dump(2);
}

std::string decomposition_json(const DecompositionResult& result, const std::vector<std::string>& profile_paths) {
  if (profile_paths.size() != result.levels.size()) {
    throw InvalidArgument("decomposition_json: one profile path per level required");
  }
  const auto triplets = result.triplets();
  json levels = json::array();
  for (std::size_t l = 0; l < result.levels.size(); ++l) {
    const auto& level = result.levels[l];
    levels.push_back({{"scale_per_n", level.scale_per_n},
                      {"scale_fit", scale_to_json(triplets[l].scale)},
                      {"profile_path", profile_paths[l]},
                      {"profile_derivative_l2", level.recovered.profile.derivative_l2()},
                      {"cauchy_distance", level.recovered.cauchy_distance},
                      {"residual_orlicz", level.residual_orlicz},
                      {"stability",
                       {{"grad_total", level.stability.grad_total},
                        {"grad_profiles", level.stability.grad_profiles},
                        {"grad_residual", level.stability.grad_residual}}}});
  }
  const json j = {{"n_list", result.n_list},
                  {"A0", result.A0},
                  {"levels", levels},
                  {"residual_monotone", result.residual_monotone},
                  {"termination_reason", to_string(result.termination)},
                  {"termination_detail", result.termination_detail}};
  return j.dump(2) + "\n";
}

std::string trajectory_csv(const std::vector<TrajectoryRow>& rows) {
  std::string out = "t,E_kin,E_grad,E_pot,E_total,u_Linf,holder14,lux_norm\n";
  for (const auto& r : rows) {
    out += format_double(r.t) + "," + format_double(r.kinetic) + "," + format_double(r.gradient) + "," +
           format_double(r.potential) + "," + format_double(r.total) + "," + format_double(r.linf) + "," +
           format_double(r.holder14) + "," + format_double(r.lux_norm) + "\n";
  }
  return out;
}

std::string snapshot_csv(const KGState& state) {
  std::string out = "r,u,ut\n";
  for (std::size_t i = 0; i < state.nodes(); ++i) {
    out += format_double(state.r(i)) + "," + format_double(state.u[i]) + "," + format_double(state.ut[i]) + "\n";
  }
  return out;
}

RunConfig RunConfig::parse(std::string_view text) {
  RunConfig config;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ParseError("config line " + std::to_string(line_no) + ": empty key");
    if (!config.values_.emplace(key, value).second) {
      throw ParseError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  return config;
}

RunConfig RunConfig::read(const std::filesystem::path& path) { return parse(read_text(path)); }

std::string RunConfig::emit() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
  return out;
}

const std::string& RunConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ParseError("config: missing key '" + key + "'");
  return it->second;
}

std::string RunConfig::get_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? get(key) : fallback;
}

double RunConfig::get_double(const std::string& key) const {
  try {
    return parse_double(get(key));
  } catch (const ParseError& e) {
    throw ParseError("config key '" + key + "': " + e.what());
  }
}

double RunConfig::get_double_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int RunConfig::get_int_or(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  const double v = get_double(key);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ParseError("config key '" + key + "': expected an integer");
  return static_cast<int>(v);
}

void RunConfig::set(const std::string& key, std::string value) { values_[key] = std::move(value); }
void RunConfig::set(const std::string& key, double value) { values_[key] = format_double(value); }
void RunConfig::set(const std::string& key, int value) { values_[key] = std::to_string(value); }

KgRunSpec kg_run_spec(const RunConfig& config) {
  KgRunSpec spec;
  auto& o = spec.options;
  o.R = config.get_double_or("R", o.R);
  o.dr = config.get_double_or("dr", o.dr);
  o.dt = config.get_double_or("dt", o.dt);
  o.T = config.get_double_or("T", o.T);
  o.p = config.get_int_or("p", o.p);
  o.save_every = config.get_int_or("save_every", o.save_every);
  if (!(o.R > 0.0) || !(o.dr > 0.0) || !(o.dt > 0.0) || !(o.T >= 0.0) || o.p < 1 || o.save_every < 1) {
    throw InvalidArgument("kg config: R, dr, dt must be positive, T >= 0, p >= 1, save_every >= 1");
  }

  const auto kind = config.get_or("data", "zero");
  if (kind == "zero") {
    spec.data.u0 = [](double) { return 0.0; };
    spec.data.u1 = [](double) { return 0.0; };
    spec.data.support_radius = 0.0;
  } else if (kind == "bump") {
    const double n = config.get_double_or("data.n", 1.0);
    if (!(n > 0.0)) throw InvalidArgument("kg config: data.n must be positive");
    const double amplitude = config.get_double_or("data.amplitude", 0.5) / std::sqrt(n);
    const double velocity = config.get_double_or("data.velocity", 0.0) / std::sqrt(n);
    const double rho = config.get_double_or("data.radius", 1.0);
    if (!(rho > 0.0)) throw InvalidArgument("kg config: data.radius must be positive");
    const auto bump = [rho](double r) {
      if (r >= rho) return 0.0;
      const double q = 1.0 - (r / rho) * (r / rho);
      return q * q * q * q;
    };
    spec.data.u0 = [=](double r) { return amplitude * bump(r); };
    spec.data.u1 = [=](double r) { return velocity * bump(r); };
    spec.data.support_radius = rho;
  } else {
    throw ParseError("kg config: unknown data spec '" + kind + "'");
  }
  return spec;
}

}  // namespace orliczlab
