#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orliczlab/field2d.hpp"
#include "orliczlab/log_radial_field.hpp"
#include "orliczlab/orlicz.hpp"
#include "orliczlab/profiles.hpp"

namespace orliczlab {

/// A radial sequence (u_n) observed on a finite, increasing index ladder.
struct FunctionSequence {
  std::function<LogRadialField(double n)> evaluator;
  std::vector<double> n_list{10, 30, 100, 300, 1000};
};

/// Sequence of superposed concentrations, one field per index.
FunctionSequence concentration_sequence(std::vector<ConcentrationTriplet> triplets,
                                        std::vector<double> n_list, GridOptions grid = {});

/// limsup proxy over a finite ladder: max over its last two entries.
double limsup_estimate(std::span<const double> values);

/// Empirical constant C in |u(r)| <= C r^{-1/(p+1)} ||u||_{2p}^{p/(p+1)} ||grad u||^{1/(p+1)};
/// returns 0 when either norm vanishes.
double radial_decay_bound(const LogRadialField& u, int p);

struct ScaleSelectionOptions {
  double s_floor = 1.0;     ///< smallest admissible scale
  double tie_rel_tol = 1e-9;
};

struct ScaleSelection {
  double alpha = 0.0;              ///< selected scale (grid point)
  double value = 0.0;              ///< v(alpha)
  double objective = 0.0;          ///< 4|v(alpha)/A0|^2 - alpha
  double normalized = 0.0;         ///< 4|v(alpha)/A0|^2 / alpha
  double sup_with_delta = 0.0;     ///< sup_{s>=0} |v/(A0-delta)|^2 - s
  bool lower_sandwich = false;     ///< A0/2 sqrt(alpha) <= |v(alpha)|
  bool tie = false;                ///< a distant grid point ties the maximiser
};

/// Picks the scale where |v(s)|^2/s is largest among s >= s_floor with positive
/// objective 4|v(s)/A0|^2 - s. Throws DegenerateField when no such s exists.
ScaleSelection select_scale(const LogRadialField& u, double A0, double delta,
                            const ScaleSelectionOptions& options = {});

struct RecoveryOptions {
  double window = 2.0;            ///< profile support [0, window] in y = s/alpha
  double dsig = 1.0 / 512.0;
  double lower_bound_slack = 0.15;
  double cauchy_tol = 0.2;
};

struct RecoveredProfile {
  Profile profile;
  double cauchy_distance = 0.0;   ///< ||psi_n' - psi_m'|| for the last two indices
  bool converged = false;
  double lower_bound = 0.0;       ///< sqrt(pi/2) A0 (1 - slack)
  bool lower_bound_ok = false;
};

/// psi_n(y) = sqrt(2pi/alpha_n) v_n(alpha_n y) at the last index, with a
/// two-point Cauchy check standing in for the weak limit.
RecoveredProfile recover_profile(std::span<const LogRadialField> fields, std::span<const double> scales,
                                 double A0, const RecoveryOptions& options = {});
RecoveredProfile recover_profile(const FunctionSequence& seq,
                                 const std::function<double(double)>& scale_of_n, double A0,
                                 const RecoveryOptions& options = {});

struct StabilityRecord {
  double grad_total = 0.0;      ///< ||grad u_n||^2
  double grad_profiles = 0.0;   ///< sum_j ||psi_j'||^2
  double grad_residual = 0.0;   ///< ||grad r_n||^2
  double defect() const noexcept;
};

struct DecompositionLevel {
  std::vector<double> scale_per_n;
  std::vector<ScaleSelection> selections;
  RecoveredProfile recovered;
  double residual_orlicz = 0.0;   ///< A_l after subtracting this level
  StabilityRecord stability;
};

enum class Termination { ResidualBelowEps, MaxLevels, EnergyExhausted, Degenerate };
std::string to_string(Termination t);

struct DecompositionResult {
  std::vector<double> n_list;
  double A0 = 0.0;
  std::vector<DecompositionLevel> levels;
  Termination termination = Termination::MaxLevels;
  std::string termination_detail;
  bool residual_monotone = true;

  /// A_0, A_1, ..., A_L.
  std::vector<double> residual_orlicz() const;
  /// Extracted triplets with scale descriptors fitted to the per-n scales.
  std::vector<ConcentrationTriplet> triplets() const;
};

struct DecomposeOptions {
  OrliczParams params{};
  RecoveryOptions recovery{};
  ScaleSelectionOptions selection{};
  double delta_fraction = 0.1;
  /// alpha(n_max)/alpha(n_min) below this means no diverging scale.
  double min_scale_growth = 2.0;
};

DecompositionResult decompose(const FunctionSequence& seq, double eps_stop, int max_levels,
                              const DecomposeOptions& options = {});

/// Least-squares power law c n^gamma through (n, alpha_n).
ScaleDescriptor fit_scale_descriptor(std::span<const double> n_list, std::span<const double> scales);

struct CoreResult {
  std::optional<Point2> core;
  double ratio = 0.0;              ///< |E cap B(core, e^{-b alpha})| / |E|
  std::size_t level_set_cells = 0;
  double ball_radius = 0.0;
  double threshold = 0.0;
};

/// Level set E = {|f| >= sqrt(2 alpha)(1 - eps0/10) A0} and the centre among its
/// cells maximising |E cap B(x, e^{-(1-2 eps0) alpha})|.
CoreResult find_core(const Field2D& f, double alpha, double A0, double eps0);

/// Repeated find_core, removing each captured part of E before the next search.
std::vector<CoreResult> find_cores(const Field2D& f, double alpha, double A0, double eps0, int count);

}  // namespace orliczlab
