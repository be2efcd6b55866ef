#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "orliczlab/log_radial_field.hpp"
#include "orliczlab/orlicz.hpp"

namespace orliczlab {

/// F_p(u) = u (e^{4 pi u^2} - sum_{k<p} (4 pi)^k u^{2k}/k!) = u phi_p(sqrt(4 pi) u).
double F_p(double u, int p);

/// (1/4pi)(e^{4 pi u^2} - 1 - sum_{k=2}^p (4 pi)^k u^{2k}/k!); includes the mass term u^2.
double potential_density(double u, int p);

enum class Dynamics { Nonlinear, Free };

/// Radial state on nodes r_i = i dr, i = 0..N, with u_N = 0.
struct KGState {
  double R = 0.0;
  double dr = 0.0;
  int p = 1;
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> ut;

  std::size_t nodes() const noexcept { return u.size(); }
  double r(std::size_t i) const noexcept { return dr * static_cast<double>(i); }
  void validate() const;
};

enum class Criticality { Subcritical, Critical, Supercritical };
const char* to_string(Criticality c) noexcept;

/// E_p^0 < 1, = 1 (within tolerance), > 1.
Criticality classify(double energy, double tolerance = 0.0) noexcept;

struct EnergyBreakdown {
  double kinetic = 0.0;
  double gradient = 0.0;
  double potential = 0.0;
  double total = 0.0;
  Criticality classification = Criticality::Subcritical;
};

/// Node weights of the radial quadrature: pi dr^2/4 at r = 0, 2 pi r_i dr elsewhere.
std::vector<double> radial_weights(std::size_t nodes, double dr);

/// Discrete energy conserved by the semi-discrete scheme. For Free dynamics the
/// potential part is ||u||_{L^2}^2.
EnergyBreakdown energy(const KGState& state, Dynamics dynamics = Dynamics::Nonlinear);

/// E_c(w) = int |w_t|^2 + |grad w|^2 + |w|^2 for w = a - b.
double quadratic_energy_gap(const KGState& a, const KGState& b);

struct CauchyData {
  std::function<double(double)> u0;
  std::function<double(double)> u1;
  double support_radius = 0.0;
};

KGState initial_state(const CauchyData& data, double R, double dr, int p);

/// One velocity-Verlet (leapfrog) step; dt may be negative. Throws CflViolation
/// when |dt| > 0.5 dr and OverflowError (with t, r, u) if F_p overflows.
void step(KGState& state, double dt, Dynamics dynamics);
void step_nonlinear(KGState& state, double dt);
void step_free(KGState& state, double dt);

/// Advances by round(T/|dt|) steps of size dt.
KGState advance(KGState state, double T, double dt, Dynamics dynamics);

struct Snapshot {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> ut;
  EnergyBreakdown energy;
};

struct EvolveOptions {
  double R = 16.0;
  double dr = 1.0 / 64.0;
  double dt = 1.0 / 256.0;
  double T = 1.0;
  int p = 1;
  int save_every = 16;
};

struct Trajectory {
  double R = 0.0;
  double dr = 0.0;
  double dt = 0.0;
  int p = 1;
  Dynamics dynamics = Dynamics::Nonlinear;
  std::vector<Snapshot> snapshots;

  KGState state_at(std::size_t k) const;
};

Trajectory evolve(const CauchyData& data, const EvolveOptions& options,
                  Dynamics dynamics = Dynamics::Nonlinear);
Trajectory evolve_free(const CauchyData& data, const EvolveOptions& options);

/// sup over snapshots of E_c(u - v); throws GridMismatch for incompatible runs.
double kinetic_energy_gap(const Trajectory& nonlinear, const Trajectory& free);

/// sup|u| + max_{0 < r_j - r_i <= 1} |u_j - u_i| / (r_j - r_i)^{1/4}, over points sorted by r.
double holder_quarter_norm(std::span<const double> r, std::span<const double> u);
double holder_quarter_norm(const KGState& state);
/// Uses the origin plus at most max_points samples of the field.
double holder_quarter_norm(const LogRadialField& u, std::size_t max_points = 4000);

struct LogInequalityResult {
  double linf_sq = 0.0;
  double mu_norm_sq = 0.0;   ///< ||grad u||^2 + mu^2 ||u||^2
  double holder = 0.0;       ///< C^{1/4} proxy
  double ratio = 0.0;        ///< linf^2 / (lambda ||u||_mu^2 log(e + 2 holder/||u||_mu))
  bool guarded = false;      ///< u == 0; ratio reported as 0
};

LogInequalityResult log_inequality_check(const LogRadialField& u, double mu, double lambda);
LogInequalityResult log_inequality_check(const KGState& state, double mu, double lambda);

/// Energy inside the disk bounded by the half node nearest to radius.
double local_energy(const KGState& state, double radius, Dynamics dynamics = Dynamics::Nonlinear);
/// 2 u_t u_r 2 pi r at that half node.
double boundary_flux(const KGState& state, double radius);
/// Per snapshot interval: d/dt of the local energy minus the trapezoid-averaged flux.
std::vector<double> flux_balance(const Trajectory& traj, double radius);

/// v(s) = u(e^{-s}) resampled from the r-grid on s in [-log R, -log(dr/4)].
LogRadialField to_log_radial(const KGState& state, double ds = 1.0 / 256.0);

struct TrajectoryRow {
  double t = 0.0;
  double kinetic = 0.0;
  double gradient = 0.0;
  double potential = 0.0;
  double total = 0.0;
  double linf = 0.0;
  double holder14 = 0.0;
  double lux_norm = 0.0;
};

std::vector<TrajectoryRow> trajectory_table(const Trajectory& traj, const OrliczParams& params);

/// 1/q + 2/r = 1 with q >= 4, r >= 2.
bool strichartz_admissible(double q, double r) noexcept;
/// 1/q + 2/r <= 1: L^q_t L^r_x controlled by the Strichartz norm.
bool lebesgue_controlled(double q, double r) noexcept;

/// (int ||u(t)||_{C^{1/4}}^4 dt)^{1/4} by trapezoid over snapshots.
double l4_holder_norm(const Trajectory& traj);
/// (int ||u(t)||_{L^r}^q dt)^{1/q}; requires lebesgue_controlled(q, r).
double lq_lr_norm(const Trajectory& traj, double q, double r);

/// max over snapshots of the Luxemburg norm (the smallness hypothesis for critical data).
double max_luxemburg_norm(const Trajectory& traj, const OrliczParams& params);

struct EnergyEstimate {
  double energy = 0.0;
  double error = 0.0;  ///< |E(dr) - E(2 dr)|/3
  Criticality classification = Criticality::Subcritical;
};

/// Initial energy with a Richardson error estimate; critical when |E - 1| <= 10 error.
EnergyEstimate initial_energy(const CauchyData& data, double R, double dr, int p);

struct LinearizabilityReport {
  EnergyEstimate initial;
  double gap = 0.0;                 ///< sup_t E_c(u - v)
  double max_free_luxemburg = 0.0;  ///< compare with 1/sqrt(4 pi)
};

LinearizabilityReport linearizability(const CauchyData& data, const EvolveOptions& options,
                                      const OrliczParams& params);

}  // namespace orliczlab
