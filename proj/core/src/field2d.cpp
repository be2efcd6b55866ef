#include "orliczlab/field2d.hpp"

#include <cmath>

#include "orliczlab/errors.hpp"

namespace orliczlab {

double distance(Point2 a, Point2 b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

Field2D::Field2D(std::size_t nx, std::size_t ny, double h, Point2 origin, std::vector<double> values)
    : nx_(nx), ny_(ny), h_(h), origin_(origin), values_(std::move(values)) {
  if (nx_ < 3 || ny_ < 3) throw InvalidArgument("Field2D: grid must be at least 3x3");
  if (!(h_ > 0.0) || !std::isfinite(h_)) throw InvalidArgument("Field2D: h must be positive");
  if (values_.size() != nx_ * ny_) throw InvalidArgument("Field2D: value count does not match nx*ny");
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidArgument("Field2D: non-finite sample");
  }
}

Field2D Field2D::sample(const std::function<double(Point2)>& f, std::size_t n, double half_width) {
  const double h = 2.0 * half_width / static_cast<double>(n - 1);
  const Point2 origin{-half_width, -half_width};
  std::vector<double> values(n * n);
  for (std::size_t iy = 0; iy < n; ++iy) {
    for (std::size_t ix = 0; ix < n; ++ix) {
      values[iy * n + ix] =
          f({origin.x + h * static_cast<double>(ix), origin.y + h * static_cast<double>(iy)});
    }
  }
  return Field2D(n, n, h, origin, std::move(values));
}

bool Field2D::boundary_ring_zero() const noexcept {
  for (std::size_t ix = 0; ix < nx_; ++ix) {
    if ((*this)(ix, 0) != 0.0 || (*this)(ix, ny_ - 1) != 0.0) return false;
  }
  for (std::size_t iy = 0; iy < ny_; ++iy) {
    if ((*this)(0, iy) != 0.0 || (*this)(nx_ - 1, iy) != 0.0) return false;
  }
  return true;
}

double Field2D::lq_norm_q(double q) const {
  double sum = 0.0;
  for (double v : values_) sum += std::pow(std::abs(v), q);
  return sum * cell_area();
}

double Field2D::grad_l2_norm() const {
  double sum = 0.0;
  for (std::size_t iy = 0; iy < ny_; ++iy) {
    for (std::size_t ix = 0; ix + 1 < nx_; ++ix) {
      const double d = (*this)(ix + 1, iy) - (*this)(ix, iy);
      sum += d * d;
    }
  }
  for (std::size_t iy = 0; iy + 1 < ny_; ++iy) {
    for (std::size_t ix = 0; ix < nx_; ++ix) {
      const double d = (*this)(ix, iy + 1) - (*this)(ix, iy);
      sum += d * d;
    }
  }
  // (d/h)^2 * h^2 per edge.
  return std::sqrt(sum);
}

}  // namespace orliczlab
