#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace orliczlab {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point2 a, Point2 b) noexcept;

/// Cartesian samples on an nx-by-ny grid with spacing h; sample (ix, iy) sits at
/// (ox + ix*h, oy + iy*h). Values are row-major: values[iy*nx + ix].
class Field2D {
 public:
  Field2D() = default;
  Field2D(std::size_t nx, std::size_t ny, double h, Point2 origin, std::vector<double> values);

  /// Square grid [-half_width, half_width]^2 with n points per side.
  static Field2D sample(const std::function<double(Point2)>& f, std::size_t n, double half_width);

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  double h() const noexcept { return h_; }
  Point2 origin() const noexcept { return origin_; }
  Point2 point(std::size_t ix, std::size_t iy) const noexcept {
    return {origin_.x + h_ * static_cast<double>(ix), origin_.y + h_ * static_cast<double>(iy)};
  }
  double operator()(std::size_t ix, std::size_t iy) const noexcept { return values_[iy * nx_ + ix]; }
  double& operator()(std::size_t ix, std::size_t iy) noexcept { return values_[iy * nx_ + ix]; }
  const std::vector<double>& values() const noexcept { return values_; }
  double cell_area() const noexcept { return h_ * h_; }

  /// True when the outermost ring of samples is zero.
  bool boundary_ring_zero() const noexcept;

  /// h^2 sum |f|^q.
  double lq_norm_q(double q) const;
  /// ||grad f||_{L^2} from forward differences over all grid edges.
  double grad_l2_norm() const;

 private:
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  double h_ = 1.0;
  Point2 origin_{};
  std::vector<double> values_;
};

}  // namespace orliczlab
