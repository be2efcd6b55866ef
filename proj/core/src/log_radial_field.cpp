#include "orliczlab/log_radial_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "orliczlab/errors.hpp"

namespace orliczlab {

LogRadialField::LogRadialField(double s_min, double ds, std::vector<double> values)
    : s_min_(s_min), ds_(ds), values_(std::move(values)) {
  if (!(ds_ > 0.0) || !std::isfinite(ds_)) throw InvalidArgument("LogRadialField: ds must be positive");
  if (!std::isfinite(s_min_)) throw InvalidArgument("LogRadialField: s_min must be finite");
  if (values_.size() < 2) throw InvalidArgument("LogRadialField: need at least two samples");
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidArgument("LogRadialField: non-finite sample");
  }
}

LogRadialField LogRadialField::zero(double s_min, double s_max, double ds) {
  const auto n = static_cast<std::size_t>(std::llround((s_max - s_min) / ds)) + 1;
  return LogRadialField(s_min, ds, std::vector<double>(std::max<std::size_t>(n, 2), 0.0));
}

LogRadialField LogRadialField::sample(const std::function<double(double)>& v, double s_min,
                                      double s_max, double ds) {
  if (!(s_max > s_min)) throw InvalidArgument("LogRadialField::sample: need s_min < s_max");
  const auto n = static_cast<std::size_t>(std::llround((s_max - s_min) / ds)) + 1;
  std::vector<double> values(std::max<std::size_t>(n, 2));
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = v(s_min + ds * static_cast<double>(i));
  return LogRadialField(s_min, ds, std::move(values));
}

LogRadialField LogRadialField::from_radial(const std::function<double(double)>& u, double s_min,
                                           double s_max, double ds) {
  return sample([&u](double s) { return u(std::exp(-s)); }, s_min, s_max, ds);
}

double LogRadialField::at(double s) const noexcept {
  if (s < s_min_) return 0.0;
  const double x = (s - s_min_) / ds_;
  const auto last = values_.size() - 1;
  if (x >= static_cast<double>(last)) return values_[last];
  const auto i = static_cast<std::size_t>(x);
  const double frac = x - static_cast<double>(i);
  return values_[i] + frac * (values_[i + 1] - values_[i]);
}

double LogRadialField::at_radius(double r) const noexcept {
  if (r <= 0.0) return values_.back();
  return at(-std::log(r));
}

double LogRadialField::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

LogRadialField LogRadialField::scaled(double c) const {
  std::vector<double> out(values_);
  for (double& v : out) v *= c;
  return LogRadialField(s_min_, ds_, std::move(out));
}

namespace {
void check_same_grid(const LogRadialField& a, const LogRadialField& b) {
  if (a.size() != b.size() || std::abs(a.s_min() - b.s_min()) > 1e-12 * a.ds() ||
      std::abs(a.ds() - b.ds()) > 1e-12 * a.ds()) {
    throw GridMismatch("LogRadialField: grids differ");
  }
}
}  // namespace

LogRadialField LogRadialField::operator+(const LogRadialField& other) const {
  check_same_grid(*this, other);
  std::vector<double> out(values_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += other.values_[i];
  return LogRadialField(s_min_, ds_, std::move(out));
}

LogRadialField LogRadialField::operator-(const LogRadialField& other) const {
  check_same_grid(*this, other);
  std::vector<double> out(values_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= other.values_[i];
  return LogRadialField(s_min_, ds_, std::move(out));
}

LogRadialField LogRadialField::resampled(double s_min, double s_max, double ds) const {
  return sample([this](double s) { return at(s); }, s_min, s_max, ds);
}

bool LogRadialField::support_inside(double tol) const noexcept {
  return std::abs(values_[0]) <= tol && std::abs(values_[1] - values_[0]) / ds_ <= tol;
}

}  // namespace orliczlab
