#include "orliczlab/phi.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "orliczlab/errors.hpp"

namespace orliczlab {
namespace {

void check_order(int p) {
  if (p < 1) throw InvalidArgument("phi_p: p must be >= 1, got " + std::to_string(p));
}

// sum_{k>=p} t^k/k! with t = s^2.
double tail_series(double t, int p) {
  double term = 1.0;
  for (int k = 1; k <= p; ++k) term *= t / k;
  double sum = term;
  for (int k = p + 1; k < 400; ++k) {
    term *= t / k;
    sum += term;
    if (term <= 1e-17 * sum) break;
  }
  return sum;
}

// Neumaier-compensated sum_{k<p} t^k/k!.
double partial_series(double t, int p) {
  double sum = 0.0;
  double comp = 0.0;
  double term = 1.0;
  for (int k = 0; k < p; ++k) {
    if (k > 0) term *= t / k;
    const double next = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - next) + term;
    } else {
      comp += (term - next) + sum;
    }
    sum = next;
  }
  return sum + comp;
}

// Below s^2 = p the head of the series is comparable to e^{s^2}, so the subtraction
// would cancel; the all-positive tail converges in a few dozen terms there.
bool use_tail(double s, int p) { return std::abs(s) <= kTailSeriesSwitch || s * s < p; }

}  // namespace

double phi_p(double s, int p) {
  check_order(p);
  if (!std::isfinite(s)) throw InvalidArgument("phi_p: non-finite argument");
  const double t = s * s;
  if (t > kExponentGuard) {
    throw OverflowError("phi_p: s^2 = " + std::to_string(t) + " exceeds exponent guard");
  }
  if (use_tail(s, p)) return tail_series(t, p);
  return std::exp(t) - partial_series(t, p);
}

double phi_p_weighted(double x, int p, double log_weight) {
  check_order(p);
  const double t = x * x;
  if (t + log_weight > kExponentGuard) return std::numeric_limits<double>::infinity();
  if (use_tail(x, p)) return tail_series(t, p) * std::exp(log_weight);
  const double value = std::exp(t + log_weight) - partial_series(t, p) * std::exp(log_weight);
  return value > 0.0 ? value : 0.0;
}

double phi_p_inverse(double y, int p) {
  check_order(p);
  if (!(y >= 0.0) || !std::isfinite(y)) throw InvalidArgument("phi_p_inverse: y must be finite and >= 0");
  if (y == 0.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (phi_p(hi, p) < y) {
    lo = hi;
    hi *= 2.0;
    if (hi * hi > kExponentGuard) {
      hi = std::sqrt(kExponentGuard);
      if (phi_p(hi, p) < y) throw OverflowError("phi_p_inverse: target beyond exponent guard");
      break;
    }
  }
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (phi_p(mid, p) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double phi_p_tail_constant(int p) {
  check_order(p);
  return 1.0 / std::tgamma(p + 1.0);
}

}  // namespace orliczlab
