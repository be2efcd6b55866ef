#include "orliczlab/kg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "orliczlab/errors.hpp"
#include "orliczlab/phi.hpp"

namespace orliczlab {
namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt4Pi = std::sqrt(4.0 * kPi);

std::size_t half_node_index(const KGState& state, double radius) {
  if (!(radius > 0.0) || radius >= state.R) throw InvalidArgument("radius must lie in (0, R)");
  const double m = std::round(radius / state.dr - 0.5);
  return static_cast<std::size_t>(std::clamp(m, 0.0, static_cast<double>(state.nodes() - 2)));
}

double gradient_cell(const KGState& s, std::size_t i) {
  const double d = s.u[i + 1] - s.u[i];
  return 2.0 * kPi * (static_cast<double>(i) + 0.5) * d * d;
}

void check_compatible(const KGState& a, const KGState& b) {
  if (a.nodes() != b.nodes() || a.dr != b.dr || std::abs(a.t - b.t) > 1e-9) {
    throw GridMismatch("states differ in grid or time");
  }
}

}  // namespace

double F_p(double u, int p) { return u * phi_p(kSqrt4Pi * u, p); }

double potential_density(double u, int p) { return u * u + phi_p(kSqrt4Pi * u, p + 1) / (4.0 * kPi); }

void KGState::validate() const {
  if (!(dr > 0.0) || !(R > dr)) throw InvalidArgument("KGState: need 0 < dr < R");
  if (p < 1) throw InvalidArgument("KGState: p must be >= 1");
  if (u.size() != ut.size() || u.size() < 3) throw InvalidArgument("KGState: u and ut sizes differ");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i]) || !std::isfinite(ut[i])) throw InvalidArgument("KGState: non-finite value");
  }
}

const char* to_string(Criticality c) noexcept {
  switch (c) {
    case Criticality::Subcritical: return "subcritical";
    case Criticality::Critical: return "critical";
    case Criticality::Supercritical: return "supercritical";
  }
  return "unknown";
}

Criticality classify(double energy, double tolerance) noexcept {
  if (std::abs(energy - 1.0) <= tolerance) return Criticality::Critical;
  return energy < 1.0 ? Criticality::Subcritical : Criticality::Supercritical;
}

std::vector<double> radial_weights(std::size_t nodes, double dr) {
  std::vector<double> w(nodes);
  w[0] = 0.25 * kPi * dr * dr;
  for (std::size_t i = 1; i < nodes; ++i) w[i] = 2.0 * kPi * static_cast<double>(i) * dr * dr;
  return w;
}

EnergyBreakdown energy(const KGState& state, Dynamics dynamics) {
  const auto w = radial_weights(state.nodes(), state.dr);
  EnergyBreakdown e;
  for (std::size_t i = 0; i < state.nodes(); ++i) {
    e.kinetic += w[i] * state.ut[i] * state.ut[i];
    const double u = state.u[i];
    e.potential += w[i] * (dynamics == Dynamics::Free ? u * u : potential_density(u, state.p));
  }
  for (std::size_t i = 0; i + 1 < state.nodes(); ++i) e.gradient += gradient_cell(state, i);
  e.total = e.kinetic + e.gradient + e.potential;
  e.classification = classify(e.total);
  return e;
}

double quadratic_energy_gap(const KGState& a, const KGState& b) {
  check_compatible(a, b);
  const auto w = radial_weights(a.nodes(), a.dr);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.nodes(); ++i) {
    const double dt = a.ut[i] - b.ut[i];
    const double du = a.u[i] - b.u[i];
    sum += w[i] * (dt * dt + du * du);
  }
  for (std::size_t i = 0; i + 1 < a.nodes(); ++i) {
    const double d = (a.u[i + 1] - b.u[i + 1]) - (a.u[i] - b.u[i]);
    sum += 2.0 * kPi * (static_cast<double>(i) + 0.5) * d * d;
  }
  return sum;
}

KGState initial_state(const CauchyData& data, double R, double dr, int p) {
  if (!(dr > 0.0) || !(R > 2.0 * dr)) throw InvalidArgument("initial_state: need 0 < 2 dr < R");
  KGState s;
  s.R = R;
  s.dr = dr;
  s.p = p;
  const auto n = static_cast<std::size_t>(std::llround(R / dr)) + 1;
  s.u.resize(n);
  s.ut.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = dr * static_cast<double>(i);
    s.u[i] = data.u0 ? data.u0(r) : 0.0;
    s.ut[i] = data.u1 ? data.u1(r) : 0.0;
  }
  s.u.back() = 0.0;
  s.ut.back() = 0.0;
  s.validate();
  return s;
}

namespace {

void acceleration(const KGState& s, Dynamics dynamics, std::vector<double>& a) {
  const std::size_t n = s.nodes();
  const double inv_dr2 = 1.0 / (s.dr * s.dr);
  a.assign(n, 0.0);
  a[0] = 4.0 * (s.u[1] - s.u[0]) * inv_dr2;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double ri = static_cast<double>(i);
    a[i] = ((ri + 0.5) * (s.u[i + 1] - s.u[i]) - (ri - 0.5) * (s.u[i] - s.u[i - 1])) * inv_dr2 / ri;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double u = s.u[i];
    double force = u;
    if (dynamics == Dynamics::Nonlinear) {
      try {
        force += F_p(u, s.p);
      } catch (const OverflowError&) {
        std::ostringstream os;
        os << "F_p overflow at t = " << s.t << ", r = " << s.r(i) << ", u = " << u;
        throw OverflowError(os.str());
      }
    }
    a[i] -= force;
  }
  a[n - 1] = 0.0;
}

}  // namespace

void step(KGState& state, double dt, Dynamics dynamics) {
  if (std::abs(dt) > 0.5 * state.dr) {
    throw CflViolation("step: |dt| = " + std::to_string(std::abs(dt)) + " exceeds 0.5 dr");
  }
  thread_local std::vector<double> a;
  const std::size_t n = state.nodes();
  acceleration(state, dynamics, a);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    state.ut[i] += 0.5 * dt * a[i];
    state.u[i] += dt * state.ut[i];
  }
  state.t += dt;
  acceleration(state, dynamics, a);
  for (std::size_t i = 0; i + 1 < n; ++i) state.ut[i] += 0.5 * dt * a[i];
}

void step_nonlinear(KGState& state, double dt) { step(state, dt, Dynamics::Nonlinear); }
void step_free(KGState& state, double dt) { step(state, dt, Dynamics::Free); }

KGState advance(KGState state, double T, double dt, Dynamics dynamics) {
  const auto steps = static_cast<long long>(std::llround(T / std::abs(dt)));
  for (long long k = 0; k < steps; ++k) step(state, dt, dynamics);
  return state;
}

KGState Trajectory::state_at(std::size_t k) const {
  const auto& snap = snapshots.at(k);
  KGState s;
  s.R = R;
  s.dr = dr;
  s.p = p;
  s.t = snap.t;
  s.u = snap.u;
  s.ut = snap.ut;
  return s;
}

Trajectory evolve(const CauchyData& data, const EvolveOptions& options, Dynamics dynamics) {
  if (!(options.T >= 0.0)) throw InvalidArgument("evolve: T must be >= 0");
  if (options.save_every < 1) throw InvalidArgument("evolve: save_every must be >= 1");
  if (options.dt > 0.5 * options.dr || !(options.dt > 0.0)) {
    throw CflViolation("evolve: need 0 < dt <= 0.5 dr");
  }
  if (data.support_radius + options.T > options.R - options.dr) {
    throw InvalidArgument("evolve: data support + T must stay inside R");
  }
  Trajectory traj;
  traj.R = options.R;
  traj.dr = options.dr;
  traj.dt = options.dt;
  traj.p = options.p;
  traj.dynamics = dynamics;

  KGState state = initial_state(data, options.R, options.dr, options.p);
  auto record = [&] { traj.snapshots.push_back({state.t, state.u, state.ut, energy(state, dynamics)}); };
  record();
  const auto steps = static_cast<long long>(std::llround(options.T / options.dt));
  for (long long k = 1; k <= steps; ++k) {
    step(state, options.dt, dynamics);
    if (k % options.save_every == 0 || k == steps) record();
  }
  return traj;
}

Trajectory evolve_free(const CauchyData& data, const EvolveOptions& options) {
  return evolve(data, options, Dynamics::Free);
}

double kinetic_energy_gap(const Trajectory& nonlinear, const Trajectory& free) {
  if (nonlinear.snapshots.size() != free.snapshots.size() || nonlinear.dr != free.dr ||
      nonlinear.R != free.R) {
    throw GridMismatch("kinetic_energy_gap: trajectories do not share grids and snapshots");
  }
  double gap = 0.0;
  for (std::size_t k = 0; k < nonlinear.snapshots.size(); ++k) {
    gap = std::max(gap, quadratic_energy_gap(nonlinear.state_at(k), free.state_at(k)));
  }
  return gap;
}

double holder_quarter_norm(std::span<const double> r, std::span<const double> u) {
  if (r.size() != u.size()) throw InvalidArgument("holder_quarter_norm: size mismatch");
  double sup = 0.0;
  for (double v : u) sup = std::max(sup, std::abs(v));
  double semi = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = i + 1; j < r.size(); ++j) {
      const double gap = r[j] - r[i];
      if (gap > 1.0) break;
      if (gap <= 0.0) continue;
      semi = std::max(semi, std::abs(u[j] - u[i]) / std::pow(gap, 0.25));
    }
  }
  return sup + semi;
}

double holder_quarter_norm(const KGState& state) {
  std::vector<double> r(state.nodes());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = state.r(i);
  return holder_quarter_norm(r, state.u);
}

double holder_quarter_norm(const LogRadialField& u, std::size_t max_points) {
  const std::size_t stride = std::max<std::size_t>(1, (u.size() + max_points - 1) / max_points);
  std::vector<double> r{0.0};
  std::vector<double> v{u.values().back()};
  // Increasing r means decreasing s.
  const std::size_t last = u.size() - 1;
  for (std::size_t k = 0;; k += stride) {
    const std::size_t i = last >= k ? last - k : 0;
    r.push_back(std::exp(-u.s_at(i)));
    v.push_back(u[i]);
    if (i == 0) break;
  }
  return holder_quarter_norm(r, v);
}

namespace {

LogInequalityResult log_inequality(double linf, double grad_sq, double l2_sq, double holder, double mu,
                                   double lambda) {
  if (!(mu > 0.0 && mu <= 1.0)) throw InvalidArgument("log_inequality_check: need 0 < mu <= 1");
  if (!(lambda > 2.0 / kPi)) throw InvalidArgument("log_inequality_check: need lambda > 2/pi");
  LogInequalityResult out;
  out.linf_sq = linf * linf;
  out.mu_norm_sq = grad_sq + mu * mu * l2_sq;
  out.holder = holder;
  if (out.mu_norm_sq <= 0.0 || linf == 0.0) {
    out.guarded = true;
    return out;
  }
  const double mu_norm = std::sqrt(out.mu_norm_sq);
  out.ratio = out.linf_sq / (lambda * out.mu_norm_sq * std::log(std::numbers::e + 2.0 * holder / mu_norm));
  return out;
}

}  // namespace

LogInequalityResult log_inequality_check(const LogRadialField& u, double mu, double lambda) {
  if (u.is_zero()) return log_inequality(0.0, 0.0, 0.0, 0.0, mu, lambda);
  return log_inequality(u.max_abs(), grad_l2_norm_sq(u), l2_norm_sq(u), holder_quarter_norm(u), mu,
                        lambda);
}

LogInequalityResult log_inequality_check(const KGState& state, double mu, double lambda) {
  const auto e = energy(state, Dynamics::Free);
  double linf = 0.0;
  for (double v : state.u) linf = std::max(linf, std::abs(v));
  return log_inequality(linf, e.gradient, e.potential, holder_quarter_norm(state), mu, lambda);
}

double local_energy(const KGState& state, double radius, Dynamics dynamics) {
  const std::size_t m = half_node_index(state, radius);
  const auto w = radial_weights(state.nodes(), state.dr);
  double sum = 0.0;
  for (std::size_t i = 0; i <= m; ++i) {
    const double u = state.u[i];
    sum += w[i] * (state.ut[i] * state.ut[i] +
                   (dynamics == Dynamics::Free ? u * u : potential_density(u, state.p)));
  }
  for (std::size_t i = 0; i < m; ++i) sum += gradient_cell(state, i);
  return sum;
}

double boundary_flux(const KGState& state, double radius) {
  const std::size_t m = half_node_index(state, radius);
  const double ur = (state.u[m + 1] - state.u[m]) / state.dr;
  return 2.0 * state.ut[m] * ur * 2.0 * kPi * (static_cast<double>(m) + 0.5) * state.dr;
}

std::vector<double> flux_balance(const Trajectory& traj, double radius) {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < traj.snapshots.size(); ++k) {
    const auto a = traj.state_at(k);
    const auto b = traj.state_at(k + 1);
    const double dt = b.t - a.t;
    if (dt <= 0.0) continue;
    const double de = (local_energy(b, radius, traj.dynamics) - local_energy(a, radius, traj.dynamics)) / dt;
    out.push_back(de - 0.5 * (boundary_flux(a, radius) + boundary_flux(b, radius)));
  }
  return out;
}

LogRadialField to_log_radial(const KGState& state, double ds) {
  const double s_min = -std::log(state.R);
  const double s_max = -std::log(0.25 * state.dr);
  return LogRadialField::sample(
      [&](double s) {
        const double x = std::exp(-s) / state.dr;
        const auto i = static_cast<std::size_t>(x);
        if (i + 1 >= state.nodes()) return state.u.back();
        const double frac = x - static_cast<double>(i);
        return state.u[i] + frac * (state.u[i + 1] - state.u[i]);
      },
      s_min, s_max, ds);
}

std::vector<TrajectoryRow> trajectory_table(const Trajectory& traj, const OrliczParams& params) {
  std::vector<TrajectoryRow> rows;
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const auto state = traj.state_at(k);
    const auto& e = traj.snapshots[k].energy;
    TrajectoryRow row;
    row.t = state.t;
    row.kinetic = e.kinetic;
    row.gradient = e.gradient;
    row.potential = e.potential;
    row.total = e.total;
    for (double v : state.u) row.linf = std::max(row.linf, std::abs(v));
    row.holder14 = holder_quarter_norm(state);
    row.lux_norm = luxemburg_norm(to_log_radial(state), params);
    rows.push_back(row);
  }
  return rows;
}

bool strichartz_admissible(double q, double r) noexcept {
  return q >= 4.0 && r >= 2.0 && std::abs(1.0 / q + 2.0 / r - 1.0) < 1e-12;
}

bool lebesgue_controlled(double q, double r) noexcept {
  return q >= 1.0 && r >= 2.0 && 1.0 / q + 2.0 / r <= 1.0 + 1e-12;
}

namespace {

double time_trapezoid(const Trajectory& traj, const std::function<double(const KGState&)>& f) {
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < traj.snapshots.size(); ++k) {
    const double dt = traj.snapshots[k + 1].t - traj.snapshots[k].t;
    sum += 0.5 * dt * (f(traj.state_at(k)) + f(traj.state_at(k + 1)));
  }
  return sum;
}

}  // namespace

double l4_holder_norm(const Trajectory& traj) {
  return std::pow(time_trapezoid(traj, [](const KGState& s) { return std::pow(holder_quarter_norm(s), 4.0); }),
                  0.25);
}

double lq_lr_norm(const Trajectory& traj, double q, double r) {
  if (!lebesgue_controlled(q, r)) throw InvalidArgument("lq_lr_norm: need 1/q + 2/r <= 1");
  return std::pow(time_trapezoid(traj,
                                 [&](const KGState& s) {
                                   const auto w = radial_weights(s.nodes(), s.dr);
                                   double sum = 0.0;
                                   for (std::size_t i = 0; i < s.nodes(); ++i) {
                                     sum += w[i] * std::pow(std::abs(s.u[i]), r);
                                   }
                                   return std::pow(sum, q / r);
                                 }),
                  1.0 / q);
}

double max_luxemburg_norm(const Trajectory& traj, const OrliczParams& params) {
  double best = 0.0;
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    best = std::max(best, luxemburg_norm(to_log_radial(traj.state_at(k)), params));
  }
  return best;
}

EnergyEstimate initial_energy(const CauchyData& data, double R, double dr, int p) {
  const double fine = energy(initial_state(data, R, dr, p)).total;
  const double coarse = energy(initial_state(data, R, 2.0 * dr, p)).total;
  EnergyEstimate out;
  out.energy = fine;
  out.error = std::abs(fine - coarse) / 3.0;
  out.classification = classify(fine, 10.0 * out.error);
  return out;
}

LinearizabilityReport linearizability(const CauchyData& data, const EvolveOptions& options,
                                      const OrliczParams& params) {
  LinearizabilityReport out;
  out.initial = initial_energy(data, options.R, options.dr, options.p);
  const auto nonlinear = evolve(data, options, Dynamics::Nonlinear);
  const auto free = evolve(data, options, Dynamics::Free);
  out.gap = kinetic_energy_gap(nonlinear, free);
  out.max_free_luxemburg = max_luxemburg_norm(free, params);
  return out;
}

}  // namespace orliczlab
