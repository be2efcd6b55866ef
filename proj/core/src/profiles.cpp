#include "orliczlab/profiles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "orliczlab/errors.hpp"

namespace orliczlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr std::array<double, 5> kGlNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                            0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGlWeights = {0.2369268850561891, 0.4786286704993665,
                                              0.5688888888888889, 0.4786286704993665,
                                              0.2369268850561891};

}  // namespace

// ---------------------------------------------------------------- Profile

Profile::Profile(double dsig, std::vector<double> psi) : dsig_(dsig), psi_(std::move(psi)) {
  if (!(dsig_ > 0.0)) throw InvalidArgument("Profile: dsig must be positive");
  if (psi_.size() < 2) throw InvalidArgument("Profile: need at least two samples");
  for (double v : psi_) {
    if (!std::isfinite(v)) throw InvalidArgument("Profile: non-finite sample");
  }
  if (std::abs(psi_.front()) > 1e-12 * (1.0 + std::abs(psi_.back()))) {
    throw InvalidArgument("Profile: psi(0) must vanish");
  }
  psi_.front() = 0.0;
}

Profile Profile::sample(const std::function<double(double)>& psi, double s_max, double dsig) {
  const auto n = static_cast<std::size_t>(std::llround(s_max / dsig)) + 1;
  std::vector<double> values(std::max<std::size_t>(n, 2));
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = psi(dsig * static_cast<double>(i));
  return Profile(dsig, std::move(values));
}

double Profile::at(double s) const noexcept {
  if (s <= 0.0) return 0.0;
  const double x = s / dsig_;
  const auto last = psi_.size() - 1;
  if (x >= static_cast<double>(last)) return psi_[last];
  const auto i = static_cast<std::size_t>(x);
  const double frac = x - static_cast<double>(i);
  return psi_[i] + frac * (psi_[i + 1] - psi_[i]);
}

Profile Profile::scaled(double c) const {
  std::vector<double> out(psi_);
  for (double& v : out) v *= c;
  return Profile(dsig_, std::move(out));
}

double Profile::derivative_l2_sq() const noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < psi_.size(); ++i) {
    const double d = psi_[i + 1] - psi_[i];
    sum += d * d;
  }
  return sum / dsig_;
}

double Profile::derivative_l2() const noexcept { return std::sqrt(derivative_l2_sq()); }

double Profile::weighted_l2_sq() const {
  double sum = 0.0;
  const double half = 0.5 * dsig_;
  for (std::size_t i = 0; i + 1 < psi_.size(); ++i) {
    const double mid = s_at(i) + half;
    double cell = 0.0;
    for (std::size_t k = 0; k < kGlNodes.size(); ++k) {
      const double v = psi_[i] + 0.5 * (1.0 + kGlNodes[k]) * (psi_[i + 1] - psi_[i]);
      cell += kGlWeights[k] * v * v * std::exp(-2.0 * (mid + half * kGlNodes[k]));
    }
    sum += cell * half;
  }
  return sum + 0.5 * psi_.back() * psi_.back() * std::exp(-2.0 * s_max());
}

double Profile::max_ratio_sqrt() const noexcept {
  double best = 0.0;
  for (std::size_t i = 1; i < psi_.size(); ++i) {
    best = std::max(best, std::abs(psi_[i]) / std::sqrt(s_at(i)));
  }
  return best;
}

double Profile::holder_half_excess() const noexcept {
  const double norm = derivative_l2();
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < psi_.size(); ++i) {
    for (std::size_t j = i + 1; j < psi_.size(); ++j) {
      const double gap = std::abs(psi_[j] - psi_[i]) - norm * std::sqrt(s_at(j) - s_at(i));
      worst = std::max(worst, gap);
    }
  }
  return worst;
}

double Profile::derivative_distance(const Profile& a, const Profile& b) {
  const double h = 0.25 * std::min(a.dsig(), b.dsig());
  const double end = std::max(a.s_max(), b.s_max()) + h;
  const auto steps = static_cast<std::size_t>(std::ceil(end / h));
  double sum = 0.0;
  double prev_a = 0.0;
  double prev_b = 0.0;
  for (std::size_t k = 1; k <= steps; ++k) {
    const double s = h * static_cast<double>(k);
    const double va = a.at(s);
    const double vb = b.at(s);
    const double d = (va - prev_a) - (vb - prev_b);
    sum += d * d;
    prev_a = va;
    prev_b = vb;
  }
  return std::sqrt(sum / h);
}

double Profile::relative_mass_before(double a) const noexcept {
  double before = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < psi_.size(); ++i) {
    total = std::max(total, std::abs(psi_[i]));
    if (s_at(i) < a) before = std::max(before, std::abs(psi_[i]));
  }
  return total > 0.0 ? before / total : 0.0;
}

Profile moser_profile(double a, double s_max, double dsig) {
  if (!(a > 0.0)) throw InvalidArgument("moser_profile: knee must be positive");
  const double norm = 1.0 / std::sqrt(a);
  return Profile::sample([=](double s) { return std::min(s, a) * norm; }, s_max, dsig);
}

Profile shifted_moser_profile(double a, double shift, double s_max, double dsig) {
  if (!(a > 0.0) || shift < 0.0) throw InvalidArgument("shifted_moser_profile: bad parameters");
  const double norm = 1.0 / std::sqrt(a);
  return Profile::sample([=](double s) { return std::clamp(s - shift, 0.0, a) * norm; }, s_max,
                         dsig);
}

// ------------------------------------------------------- scale and core

double ScaleDescriptor::operator()(double n) const { return std::exp(log_at(n)); }

double ScaleDescriptor::log_at(double n) const {
  switch (form) {
    case Form::Power: return std::log(c) + gamma * std::log(n);
    case Form::Geometric: return std::log(c) + n * std::log(beta);
  }
  return 0.0;
}

void ScaleDescriptor::validate() const {
  if (!(c > 0.0)) throw InvalidArgument("ScaleDescriptor: c must be positive");
  if (form == Form::Power && !(gamma > 0.0)) throw InvalidArgument("ScaleDescriptor: gamma must be positive");
  if (form == Form::Geometric && !(beta > 1.0)) throw InvalidArgument("ScaleDescriptor: beta must exceed 1");
}

Point2 CoreDescriptor::operator()(double n) const {
  return {base.x + c * std::exp(-rate * std::pow(n, gamma)), base.y};
}

double log_core_distance(const CoreDescriptor& a, const CoreDescriptor& b, double n) {
  if (a.base.x != b.base.x || a.base.y != b.base.y) return std::log(distance(a(n), b(n)));
  const double inf = std::numeric_limits<double>::infinity();
  auto log_mag = [n](const CoreDescriptor& d) {
    return d.c == 0.0 ? -std::numeric_limits<double>::infinity()
                      : std::log(std::abs(d.c)) - d.rate * std::pow(n, d.gamma);
  };
  const double la = log_mag(a);
  const double lb = log_mag(b);
  if (la == -inf && lb == -inf) return -inf;
  if (la == -inf) return lb;
  if (lb == -inf) return la;
  const double hi = std::max(la, lb);
  const double gap = std::abs(la - lb);
  if ((a.c > 0.0) == (b.c > 0.0)) {
    if (gap == 0.0) return -inf;
    return hi + std::log(-std::expm1(-gap));
  }
  return hi + std::log1p(std::exp(-gap));
}

// -------------------------------------------------------- concentrations

namespace {

double choose_ds(double span, const GridOptions& grid) {
  double ds = grid.ds;
  const double samples = span / ds + 1.0;
  if (samples > static_cast<double>(grid.max_samples)) {
    if (!grid.coarsen) {
      throw GridBudgetError("elementary_concentration: " + std::to_string(samples) +
                            " samples exceed cap " + std::to_string(grid.max_samples));
    }
    ds = span / static_cast<double>(grid.max_samples - 1);
  }
  return ds;
}

}  // namespace

LogRadialField elementary_concentration(const Profile& psi, double alpha, const GridOptions& grid) {
  if (!(alpha > 0.0)) throw InvalidArgument("elementary_concentration: alpha must be positive");
  const double s_min = -1.0;
  const double s_max = alpha * psi.s_max() + 1.0;
  const double ds = choose_ds(s_max - s_min, grid);
  const double amp = std::sqrt(alpha / kTwoPi);
  return LogRadialField::sample([&](double s) { return amp * psi.at(s / alpha); }, s_min, s_max, ds);
}

LogRadialField elementary_concentration(const ConcentrationTriplet& t, double n, const GridOptions& grid) {
  t.scale.validate();
  return elementary_concentration(t.profile, t.scale(n), grid);
}

Field2D elementary_concentration_2d(const Profile& psi, double alpha, Point2 core, std::size_t n,
                                    double half_width) {
  const double amp = std::sqrt(alpha / kTwoPi);
  return Field2D::sample(
      [&](Point2 x) {
        const double r = distance(x, core);
        if (r == 0.0) return amp * psi.values().back();
        return amp * psi.at(-std::log(r) / alpha);
      },
      n, half_width);
}

LogRadialField superpose(std::span<const ConcentrationTriplet> ts, double n, const GridOptions& grid) {
  if (ts.empty()) throw InvalidArgument("superpose: no triplets");
  double s_max = 0.0;
  for (const auto& t : ts) {
    t.scale.validate();
    s_max = std::max(s_max, t.scale(n) * t.profile.s_max() + 1.0);
  }
  const double s_min = -1.0;
  const double ds = choose_ds(s_max - s_min, grid);
  std::vector<double> alphas;
  for (const auto& t : ts) alphas.push_back(t.scale(n));
  return LogRadialField::sample(
      [&](double s) {
        double v = 0.0;
        for (std::size_t j = 0; j < ts.size(); ++j) {
          v += std::sqrt(alphas[j] / kTwoPi) * ts[j].profile.at(s / alphas[j]);
        }
        return v;
      },
      s_min, s_max, ds);
}

double elementary_lq_norm_q(const Profile& psi, double alpha, double q) {
  if (!(alpha > 0.0) || !(q > 0.0)) throw InvalidArgument("elementary_lq_norm_q: alpha, q must be positive");
  const auto vals = psi.values();
  const double half = 0.5 * psi.dsig();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
    const double mid = psi.s_at(i) + half;
    double cell = 0.0;
    for (std::size_t k = 0; k < kGlNodes.size(); ++k) {
      const double v = vals[i] + 0.5 * (1.0 + kGlNodes[k]) * (vals[i + 1] - vals[i]);
      cell += kGlWeights[k] * std::pow(std::abs(v), q) *
              std::exp(-2.0 * alpha * (mid + half * kGlNodes[k]));
    }
    sum += cell * half;
  }
  sum += std::pow(std::abs(vals.back()), q) * std::exp(-2.0 * alpha * psi.s_max()) / (2.0 * alpha);
  return std::pow(kTwoPi, 1.0 - 0.5 * q) * std::pow(alpha, 0.5 * q + 1.0) * sum;
}

double concentration_limit_norm(const Profile& psi) {
  return psi.max_ratio_sqrt() / std::sqrt(4.0 * std::numbers::pi);
}

// ---------------------------------------------------------- orthogonality

std::string to_string(OrthogonalityKind kind) {
  switch (kind) {
    case OrthogonalityKind::ByScale: return "orthogonal-by-scale";
    case OrthogonalityKind::ByCore: return "orthogonal-by-core";
    case OrthogonalityKind::Same: return "same";
    case OrthogonalityKind::Undetermined: return "undetermined";
  }
  return "undetermined";
}

OrthogonalityVerdict orthogonality_test(const ConcentrationTriplet& a, const ConcentrationTriplet& b,
                                        std::span<const double> n_range,
                                        const OrthogonalityOptions& options) {
  OrthogonalityVerdict verdict;
  if (n_range.size() < 2) return verdict;
  a.scale.validate();
  b.scale.validate();

  std::vector<double> log_ratio;
  for (double n : n_range) log_ratio.push_back(std::abs(b.scale.log_at(n) - a.scale.log_at(n)));
  verdict.final_log_ratio = log_ratio.back();

  const bool equal_scales =
      std::all_of(log_ratio.begin(), log_ratio.end(), [](double l) { return l < 1e-12; });
  if (!equal_scales) {
    const bool increasing = std::is_sorted(log_ratio.begin(), log_ratio.end()) &&
                            log_ratio.back() > log_ratio.front();
    if (increasing && log_ratio.back() >= options.divergence_threshold) {
      verdict.kind = OrthogonalityKind::ByScale;
    }
    return verdict;
  }

  if (a.core == b.core) {
    verdict.kind = OrthogonalityKind::Same;
    return verdict;
  }

  std::vector<double> core_ratio;
  for (double n : n_range) core_ratio.push_back(-log_core_distance(a.core, b.core, n) / a.scale(n));
  const double last = core_ratio.back();
  const double prev = core_ratio[core_ratio.size() - 2];
  if (!std::isfinite(last) || std::abs(last - prev) > options.convergence_tol * std::max(1.0, std::abs(last))) {
    return verdict;
  }
  if (last < -options.convergence_tol) return verdict;
  const double limit = std::max(last, 0.0);
  verdict.core_limit = limit;
  if (a.profile.relative_mass_before(limit) <= options.null_tol ||
      b.profile.relative_mass_before(limit) <= options.null_tol) {
    verdict.kind = OrthogonalityKind::ByCore;
  }
  return verdict;
}

double sum_norm_limit(std::span<const ConcentrationTriplet> ts, double n, const OrliczParams& params,
                      const GridOptions& grid) {
  return luxemburg_norm(superpose(ts, n, grid), params);
}

std::vector<LogRadialField> moser_calibration_family(std::span<const double> alphas,
                                                     std::span<const double> radii, double ds) {
  std::vector<LogRadialField> out;
  for (double alpha : alphas) {
    for (double radius : radii) {
      const double shift = std::log(radius);
      const double amp = 1.0 / std::sqrt(kTwoPi * alpha);
      out.push_back(LogRadialField::sample(
          [=](double s) { return amp * std::clamp(s + shift, 0.0, alpha); }, -shift - 1.0,
          -shift + alpha + 1.0, ds));
    }
  }
  return out;
}

LogRadialField gaussian_field(double amplitude, double width, double ds) {
  if (!(width > 0.0)) throw InvalidArgument("gaussian_field: width must be positive");
  return LogRadialField::from_radial(
      [=](double r) { return amplitude * std::exp(-(r * r) / (width * width)); }, -std::log(8.0 * width),
      -std::log(1e-4 * width), ds);
}

LogRadialField bump_field(double amplitude, double radius, int k, double ds) {
  if (!(radius > 0.0) || k < 1) throw InvalidArgument("bump_field: need radius > 0 and k >= 1");
  return LogRadialField::from_radial(
      [=](double r) {
        if (r >= radius) return 0.0;
        return amplitude * std::pow(1.0 - (r / radius) * (r / radius), k);
      },
      -std::log(radius), -std::log(1e-4 * radius), ds);
}

std::vector<LogRadialField> kappa_calibration_family(double ds) {
  std::vector<double> alphas;
  for (double a = 0.5; a <= 32.0; a *= std::sqrt(2.0)) alphas.push_back(a);
  std::vector<double> radii;
  for (double r = 0.25; r <= 4.0; r *= std::sqrt(2.0)) radii.push_back(r);
  auto out = moser_calibration_family(alphas, radii, ds);
  for (double w = 0.1; w <= 64.0; w *= std::sqrt(2.0)) {
    out.push_back(gaussian_field(1.0, w, ds));
    out.push_back(bump_field(1.0, w, 2, ds));
    out.push_back(bump_field(1.0, w, 4, ds));
  }
  return out;
}

}  // namespace orliczlab
