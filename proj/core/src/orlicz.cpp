#include "orliczlab/orlicz.hpp"

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

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kGlNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                            0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGlWeights = {0.2369268850561891, 0.4786286704993665,
                                              0.5688888888888889, 0.4786286704993665,
                                              0.2369268850561891};

// Cells whose integrand bound is below e^{kSkipLog} relative to the target level are dropped.
constexpr double kSkipLog = -55.0;

}  // namespace

void OrliczParams::validate() const {
  if (p < 1) throw InvalidArgument("OrliczParams: p must be >= 1");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw InvalidArgument("OrliczParams: kappa must be > 0");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InvalidArgument("OrliczParams: alpha must be >= 0");
}

double radial_integral(const LogRadialField& u, const std::function<double(double)>& g) {
  const auto vals = u.values();
  const double ds = u.ds();
  const double half = 0.5 * ds;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
    const double mid = u.s_at(i) + half;
    const double v0 = vals[i];
    const double dv = vals[i + 1] - vals[i];
    double cell = 0.0;
    for (std::size_t k = 0; k < kGlNodes.size(); ++k) {
      const double t = 0.5 * (1.0 + kGlNodes[k]);
      const double s = mid + half * kGlNodes[k];
      cell += kGlWeights[k] * g(v0 + t * dv) * std::exp(-2.0 * s);
    }
    sum += cell * half;
  }
  const double tail = 0.5 * g(vals.back()) * std::exp(-2.0 * u.s_max());
  return kTwoPi * (sum + tail);
}

double grad_l2_norm_sq(const LogRadialField& u) {
  const auto vals = u.values();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
    const double d = vals[i + 1] - vals[i];
    sum += d * d;
  }
  return kTwoPi * sum / u.ds();
}

double l2_norm_sq(const LogRadialField& u) {
  return radial_integral(u, [](double v) { return v * v; });
}

double lq_norm(const LogRadialField& u, double q) {
  if (!(q > 0.0)) throw InvalidArgument("lq_norm: q must be positive");
  const double integral = radial_integral(u, [q](double v) { return std::pow(std::abs(v), q); });
  return std::pow(integral, 1.0 / q);
}

double h1_norm(const LogRadialField& u) { return std::sqrt(grad_l2_norm_sq(u) + l2_norm_sq(u)); }

double orlicz_integral(const LogRadialField& u, double lambda, int p) {
  if (!(lambda > 0.0)) throw InvalidArgument("orlicz_integral: lambda must be positive");
  const auto vals = u.values();
  const double ds = u.ds();
  const double half = 0.5 * ds;
  const double log_ds = std::log(ds);
  const double inv = 1.0 / lambda;
  const double inf = std::numeric_limits<double>::infinity();

  auto exponent = [&](std::size_t i) {
    const double x = vals[i] * inv;
    return x * x - 2.0 * u.s_at(i);
  };

  double sum = 0.0;
  double e_left = exponent(0);
  if (e_left > kExponentGuard) return inf;
  for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
    const double e_right = exponent(i + 1);
    if (e_right > kExponentGuard) return inf;
    // x(s)^2 - 2s is convex on a cell, so the endpoints bound the integrand.
    const double bound = std::max(e_left, e_right) + log_ds;
    e_left = e_right;
    if (bound < kSkipLog) continue;
    const double mid = u.s_at(i) + half;
    const double v0 = vals[i];
    const double dv = vals[i + 1] - vals[i];
    double cell = 0.0;
    for (std::size_t k = 0; k < kGlNodes.size(); ++k) {
      const double t = 0.5 * (1.0 + kGlNodes[k]);
      const double s = mid + half * kGlNodes[k];
      const double term = phi_p_weighted(std::abs(v0 + t * dv) * inv, p, -2.0 * s);
      if (!std::isfinite(term)) return inf;
      cell += kGlWeights[k] * term;
    }
    sum += cell * half;
  }
  const double tail = 0.5 * phi_p_weighted(std::abs(vals.back()) * inv, p, -2.0 * u.s_max());
  if (!std::isfinite(tail)) return inf;
  return kTwoPi * (sum + tail);
}

double luxemburg_norm(const LogRadialField& u, const OrliczParams& params,
                      const LuxemburgOptions& options) {
  params.validate();
  if (u.is_zero()) return 0.0;
  const double kappa = params.kappa;
  auto above = [&](double lambda) { return orlicz_integral(u, lambda, params.p) > kappa; };

  double hi = 2.0 * h1_norm(u) / std::sqrt(4.0 * std::numbers::pi) + 1.0;
  int doublings = 0;
  while (above(hi)) {
    hi *= 2.0;
    if (++doublings > options.max_doublings) {
      throw NonConvergence("luxemburg_norm: upper bracket not found after " +
                           std::to_string(options.max_doublings) + " doublings");
    }
  }
  double lo = hi * std::ldexp(1.0, -60);
  doublings = 0;
  while (!above(lo)) {
    hi = lo;
    lo *= 0.5;
    if (++doublings > options.max_doublings) {
      throw NonConvergence("luxemburg_norm: lower bracket not found");
    }
  }
  // G(lo) > kappa >= G(hi); bisect in log(lambda).
  for (int it = 0; it < 400 && (hi - lo) > options.rel_tol * hi; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (above(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double tm_functional(const LogRadialField& u, double alpha, int p) {
  if (!(alpha >= 0.0)) throw InvalidArgument("tm_functional: alpha must be >= 0");
  if (p < 1) throw InvalidArgument("tm_functional: p must be >= 1");
  if (alpha == 0.0 || u.is_zero()) return 0.0;
  const double value = orlicz_integral(u, 1.0 / std::sqrt(alpha), p);
  if (!std::isfinite(value)) {
    throw OverflowError("tm_functional: integrand exceeds exponent guard for alpha = " +
                        std::to_string(alpha));
  }
  return value;
}

double kappa_lower_bound(std::span<const LogRadialField> fields, int p) {
  double best = 0.0;
  for (const auto& f : fields) {
    const double norm = h1_norm(f);
    if (norm == 0.0) continue;
    best = std::max(best, tm_functional(f.scaled(1.0 / norm), 4.0 * std::numbers::pi, p));
  }
  return best;
}

}  // namespace orliczlab
