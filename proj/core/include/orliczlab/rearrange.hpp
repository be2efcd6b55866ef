#pragma once

#include "orliczlab/field2d.hpp"
#include "orliczlab/log_radial_field.hpp"

namespace orliczlab {

struct RearrangeOptions {
  double ds = 1.0 / 512.0;  ///< step of the output log-radial grid
};

/// Symmetric decreasing rearrangement |f|^* by cell sorting.
///
/// Sorted cell i (descending |f|) occupies the annulus between radii
/// h sqrt(i/pi) and h sqrt((i+1)/pi). Knots sit at radii j h with the sorted
/// levels averaged over a ring of width h; the knots are joined by a monotone
/// (PCHIP) interpolant in s, so the output is non-increasing in r. The support
/// ends at h sqrt(K/pi) for K nonzero cells.
LogRadialField symmetric_decreasing_rearrangement(const Field2D& f,
                                                  const RearrangeOptions& options = {});

struct PolyaSzegoResult {
  double grad_in = 0.0;   ///< ||grad f||_{L^2}
  double grad_out = 0.0;  ///< ||grad f^*||_{L^2}
};

PolyaSzegoResult polya_szego_check(const Field2D& f, const RearrangeOptions& options = {});

/// |{x : |u(x)| > t}| for a log-radial field, exact for the linear interpolant in s.
double superlevel_measure(const LogRadialField& u, double t);

/// |{|f| > t}| on the Cartesian grid (cell count times h^2).
double superlevel_measure(const Field2D& f, double t);

/// Cells with |f| > t that have a 4-neighbour with |f| <= t.
std::size_t superlevel_boundary_cells(const Field2D& f, double t);

}  // namespace orliczlab
