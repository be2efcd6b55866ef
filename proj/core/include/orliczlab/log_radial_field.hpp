#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace orliczlab {

/// A radial function u(|x|) stored in log coordinates, v(s) = u(e^{-s}), on a
/// uniform s-grid.
///
/// Between samples v is the linear interpolant. Below s_min (large radii) the
/// field is zero; above s_max (the small disk around the origin) it keeps its
/// last sampled value.
class LogRadialField {
 public:
  LogRadialField() = default;
  LogRadialField(double s_min, double ds, std::vector<double> values);

  static LogRadialField zero(double s_min, double s_max, double ds);
  static LogRadialField sample(const std::function<double(double)>& v, double s_min,
                               double s_max, double ds);
  /// Samples a function of the radius r = e^{-s}.
  static LogRadialField from_radial(const std::function<double(double)>& u, double s_min,
                                    double s_max, double ds);

  double s_min() const noexcept { return s_min_; }
  double s_max() const noexcept { return s_min_ + ds_ * static_cast<double>(values_.size() - 1); }
  double ds() const noexcept { return ds_; }
  std::size_t size() const noexcept { return values_.size(); }
  double s_at(std::size_t i) const noexcept { return s_min_ + ds_ * static_cast<double>(i); }
  std::span<const double> values() const noexcept { return values_; }
  std::vector<double>& mutable_values() noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  /// v(s) under the extension convention above.
  double at(double s) const noexcept;
  /// u(r) = v(-log r); r = 0 returns the innermost value.
  double at_radius(double r) const noexcept;

  double max_abs() const noexcept;
  bool is_zero() const noexcept { return max_abs() == 0.0; }

  LogRadialField scaled(double c) const;
  /// Same grid; throws GridMismatch otherwise.
  LogRadialField operator+(const LogRadialField& other) const;
  LogRadialField operator-(const LogRadialField& other) const;
  /// Re-samples this field on another uniform grid.
  LogRadialField resampled(double s_min, double s_max, double ds) const;

  /// |v(s_min)| and the first-cell slope are both below tol (support inside the grid).
  bool support_inside(double tol) const noexcept;

 private:
  double s_min_ = 0.0;
  double ds_ = 1.0;
  std::vector<double> values_;
};

}  // namespace orliczlab
