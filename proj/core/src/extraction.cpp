#include "orliczlab/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "orliczlab/errors.hpp"

namespace orliczlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Subtracts sqrt(alpha/2pi) psi(s/alpha) from u on u's grid.
LogRadialField subtract_concentration(const LogRadialField& u, const Profile& psi, double alpha) {
  std::vector<double> out(u.values().begin(), u.values().end());
  const double amp = std::sqrt(alpha / kTwoPi);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= amp * psi.at(u.s_at(i) / alpha);
  return LogRadialField(u.s_min(), u.ds(), std::move(out));
}

Profile rescaled_profile(const LogRadialField& u, double alpha, const RecoveryOptions& options) {
  const double amp = std::sqrt(kTwoPi / alpha);
  auto sampled = Profile::sample([&](double y) { return y <= 0.0 ? 0.0 : amp * u.at(alpha * y); },
                                 options.window, options.dsig);
  std::vector<double> psi(sampled.values().begin(), sampled.values().end());
  psi.front() = 0.0;
  return Profile(options.dsig, std::move(psi));
}

}  // namespace

FunctionSequence concentration_sequence(std::vector<ConcentrationTriplet> triplets,
                                        std::vector<double> n_list, GridOptions grid) {
  FunctionSequence seq;
  seq.n_list = std::move(n_list);
  seq.evaluator = [ts = std::move(triplets), grid](double n) { return superpose(ts, n, grid); };
  return seq;
}

double limsup_estimate(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const std::size_t start = values.size() >= 2 ? values.size() - 2 : 0;
  return *std::max_element(values.begin() + static_cast<std::ptrdiff_t>(start), values.end());
}

double radial_decay_bound(const LogRadialField& u, int p) {
  if (p < 1) throw InvalidArgument("radial_decay_bound: p must be >= 1");
  const double lq = lq_norm(u, 2.0 * p);
  const double grad = std::sqrt(grad_l2_norm_sq(u));
  if (lq < 1e-300 || grad < 1e-300) return 0.0;
  const double q = 1.0 / (p + 1.0);
  const double denom = std::pow(lq, p * q) * std::pow(grad, q);
  double best = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    best = std::max(best, std::abs(u[i]) * std::exp(-u.s_at(i) * q));
  }
  return best / denom;
}

ScaleSelection select_scale(const LogRadialField& u, double A0, double delta,
                            const ScaleSelectionOptions& options) {
  if (!(A0 > 0.0)) throw InvalidArgument("select_scale: A0 must be positive");
  if (!(delta > 0.0) || !(delta < A0)) throw InvalidArgument("select_scale: need 0 < delta < A0");
  ScaleSelection sel;
  sel.sup_with_delta = -std::numeric_limits<double>::infinity();
  std::size_t best = u.size();
  double best_norm = -1.0;
  const double inv = 1.0 / A0;
  const double inv_delta = 1.0 / (A0 - delta);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double s = u.s_at(i);
    if (s < 0.0) continue;
    const double v = u[i];
    sel.sup_with_delta = std::max(sel.sup_with_delta, v * v * inv_delta * inv_delta - s);
    if (s < options.s_floor) continue;
    const double x = v * inv;
    const double objective = 4.0 * x * x - s;
    if (objective <= 0.0) continue;
    const double normalized = 4.0 * x * x / s;
    if (normalized >= best_norm) {
      best_norm = normalized;
      best = i;
    }
  }
  if (best == u.size()) {
    throw DegenerateField("select_scale: 4|v/A0|^2 - s is nowhere positive on s >= " +
                          std::to_string(options.s_floor));
  }
  sel.alpha = u.s_at(best);
  sel.value = u[best];
  sel.normalized = best_norm;
  sel.objective = 4.0 * (sel.value * inv) * (sel.value * inv) - sel.alpha;
  sel.lower_sandwich = 0.5 * A0 * std::sqrt(sel.alpha) <= std::abs(sel.value);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double s = u.s_at(i);
    if (s < options.s_floor || std::abs(s - sel.alpha) <= 1.0) continue;
    const double x = u[i] * inv;
    if (4.0 * x * x - s > 0.0 && 4.0 * x * x / s >= best_norm * (1.0 - options.tie_rel_tol)) {
      sel.tie = true;
      break;
    }
  }
  return sel;
}

RecoveredProfile recover_profile(std::span<const LogRadialField> fields, std::span<const double> scales,
                                 double A0, const RecoveryOptions& options) {
  if (fields.empty() || fields.size() != scales.size()) {
    throw InvalidArgument("recover_profile: need one scale per field");
  }
  RecoveredProfile out;
  out.profile = rescaled_profile(fields.back(), scales.back(), options);
  const double norm = out.profile.derivative_l2();
  if (fields.size() >= 2) {
    const auto previous = rescaled_profile(fields[fields.size() - 2], scales[scales.size() - 2], options);
    out.cauchy_distance = Profile::derivative_distance(out.profile, previous);
  }
  out.converged = norm > 0.0 && out.cauchy_distance <= options.cauchy_tol * norm;
  out.lower_bound = std::sqrt(std::numbers::pi / 2.0) * A0 * (1.0 - options.lower_bound_slack);
  out.lower_bound_ok = norm >= out.lower_bound;
  return out;
}

RecoveredProfile recover_profile(const FunctionSequence& seq,
                                 const std::function<double(double)>& scale_of_n, double A0,
                                 const RecoveryOptions& options) {
  std::vector<LogRadialField> fields;
  std::vector<double> scales;
  for (double n : seq.n_list) {
    fields.push_back(seq.evaluator(n));
    scales.push_back(scale_of_n(n));
  }
  return recover_profile(fields, scales, A0, options);
}

double StabilityRecord::defect() const noexcept {
  if (grad_total == 0.0) return 0.0;
  return std::abs(grad_total - grad_profiles - grad_residual) / grad_total;
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::ResidualBelowEps: return "residual-below-eps";
    case Termination::MaxLevels: return "max-levels";
    case Termination::EnergyExhausted: return "energy-exhausted";
    case Termination::Degenerate: return "degenerate";
  }
  return "unknown";
}

std::vector<double> DecompositionResult::residual_orlicz() const {
  std::vector<double> out{A0};
  for (const auto& level : levels) out.push_back(level.residual_orlicz);
  return out;
}

ScaleDescriptor fit_scale_descriptor(std::span<const double> n_list, std::span<const double> scales) {
  if (n_list.size() != scales.size() || n_list.empty()) {
    throw InvalidArgument("fit_scale_descriptor: mismatched inputs");
  }
  ScaleDescriptor d;
  if (n_list.size() == 1) {
    d.c = scales[0] / n_list[0];
    return d;
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(n_list.size());
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const double x = std::log(n_list[i]);
    const double y = std::log(scales[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  d.gamma = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  d.c = std::exp((sy - d.gamma * sx) / m);
  return d;
}

std::vector<ConcentrationTriplet> DecompositionResult::triplets() const {
  std::vector<ConcentrationTriplet> out;
  for (const auto& level : levels) {
    ConcentrationTriplet t;
    t.scale = fit_scale_descriptor(n_list, level.scale_per_n);
    t.profile = level.recovered.profile;
    out.push_back(std::move(t));
  }
  return out;
}

DecompositionResult decompose(const FunctionSequence& seq, double eps_stop, int max_levels,
                              const DecomposeOptions& options) {
  options.params.validate();
  if (seq.n_list.empty()) throw InvalidArgument("decompose: empty n_list");
  if (!std::is_sorted(seq.n_list.begin(), seq.n_list.end())) {
    throw InvalidArgument("decompose: n_list must be increasing");
  }

  DecompositionResult result;
  result.n_list = seq.n_list;

  std::vector<LogRadialField> residual;
  std::vector<double> norms;
  for (double n : seq.n_list) {
    residual.push_back(seq.evaluator(n));
    norms.push_back(luxemburg_norm(residual.back(), options.params));
  }
  result.A0 = limsup_estimate(norms);
  const double grad_total = grad_l2_norm_sq(residual.back());
  const double energy_constant = std::sqrt(std::numbers::pi / 2.0);

  double current = result.A0;
  double profiles_energy = 0.0;
  for (;;) {
    if (current <= eps_stop) {
      result.termination = Termination::ResidualBelowEps;
      break;
    }
    if (static_cast<int>(result.levels.size()) >= max_levels) {
      result.termination = Termination::MaxLevels;
      break;
    }
    const double budget = grad_total - profiles_energy;
    if (budget < energy_constant * energy_constant * current * current) {
      result.termination = Termination::EnergyExhausted;
      break;
    }

    DecompositionLevel level;
    try {
      for (const auto& r : residual) {
        level.selections.push_back(
            select_scale(r, current, options.delta_fraction * current, options.selection));
        level.scale_per_n.push_back(level.selections.back().alpha);
      }
    } catch (const DegenerateField& e) {
      result.termination = Termination::Degenerate;
      result.termination_detail = e.what();
      break;
    }
    if (level.scale_per_n.back() < options.min_scale_growth * level.scale_per_n.front()) {
      result.termination = Termination::Degenerate;
      result.termination_detail = "selected scales do not diverge along n_list";
      break;
    }

    level.recovered = recover_profile(residual, level.scale_per_n, current, options.recovery);
    for (std::size_t k = 0; k < residual.size(); ++k) {
      residual[k] = subtract_concentration(residual[k], level.recovered.profile, level.scale_per_n[k]);
      norms[k] = luxemburg_norm(residual[k], options.params);
    }
    level.residual_orlicz = limsup_estimate(norms);
    profiles_energy += level.recovered.profile.derivative_l2_sq();
    level.stability = {grad_total, profiles_energy, grad_l2_norm_sq(residual.back())};
    if (level.residual_orlicz > current) result.residual_monotone = false;
    current = level.residual_orlicz;
    result.levels.push_back(std::move(level));
  }
  return result;
}

CoreResult find_core(const Field2D& f, double alpha, double A0, double eps0) {
  if (!(eps0 > 0.0 && eps0 < 0.5)) throw InvalidArgument("find_core: need 0 < eps0 < 1/2");
  if (!(alpha > 0.0)) throw InvalidArgument("find_core: alpha must be positive");
  CoreResult out;
  out.threshold = std::sqrt(2.0 * alpha) * (1.0 - eps0 / 10.0) * A0;
  out.ball_radius = std::exp(-(1.0 - 2.0 * eps0) * alpha);

  std::vector<Point2> cells;
  for (std::size_t iy = 0; iy < f.ny(); ++iy) {
    for (std::size_t ix = 0; ix < f.nx(); ++ix) {
      if (std::abs(f(ix, iy)) >= out.threshold) cells.push_back(f.point(ix, iy));
    }
  }
  out.level_set_cells = cells.size();
  if (cells.empty()) return out;

  Point2 centroid{};
  for (const auto& c : cells) {
    centroid.x += c.x;
    centroid.y += c.y;
  }
  centroid.x /= static_cast<double>(cells.size());
  centroid.y /= static_cast<double>(cells.size());

  std::size_t best_count = 0;
  Point2 best{};
  double best_offset = std::numeric_limits<double>::infinity();
  for (const auto& candidate : cells) {
    std::size_t count = 0;
    for (const auto& c : cells) {
      if (distance(candidate, c) <= out.ball_radius) ++count;
    }
    const double offset = distance(candidate, centroid);
    if (count > best_count || (count == best_count && offset < best_offset)) {
      best_count = count;
      best = candidate;
      best_offset = offset;
    }
  }
  out.core = best;
  out.ratio = static_cast<double>(best_count) / static_cast<double>(cells.size());
  return out;
}

std::vector<CoreResult> find_cores(const Field2D& f, double alpha, double A0, double eps0, int count) {
  std::vector<CoreResult> out;
  Field2D work = f;
  for (int k = 0; k < count; ++k) {
    auto found = find_core(work, alpha, A0, eps0);
    if (!found.core) break;
    for (std::size_t iy = 0; iy < work.ny(); ++iy) {
      for (std::size_t ix = 0; ix < work.nx(); ++ix) {
        if (std::abs(work(ix, iy)) >= found.threshold &&
            distance(work.point(ix, iy), *found.core) <= found.ball_radius) {
          work(ix, iy) = 0.0;
        }
      }
    }
    out.push_back(found);
  }
  return out;
}

}  // namespace orliczlab
