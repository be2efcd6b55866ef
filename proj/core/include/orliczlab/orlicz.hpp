#pragma once

#include <functional>
#include <span>

#include "orliczlab/log_radial_field.hpp"
#include "orliczlab/phi.hpp"

namespace orliczlab {

struct OrliczParams {
  int p = 1;            ///< number of subtracted Taylor terms in phi_p
  double kappa = 1.0;   ///< level in inf{lambda : int phi_p(|u|/lambda) <= kappa}
  double alpha = 0.0;   ///< Trudinger-Moser exponent

  void validate() const;
};

struct LuxemburgOptions {
  double rel_tol = 1e-10;
  int max_doublings = 120;
};

/// 2 pi int g(v(s)) e^{-2s} ds over the piecewise-linear interpolant, i.e.
/// int_{R^2} g(u(x)) dx. Gauss-Legendre per cell plus the exact tail above s_max.
double radial_integral(const LogRadialField& u, const std::function<double(double)>& g);

/// ||grad u||^2 = 2 pi int v'(s)^2 ds (exact for the linear interpolant).
double grad_l2_norm_sq(const LogRadialField& u);
double l2_norm_sq(const LogRadialField& u);
double lq_norm(const LogRadialField& u, double q);
double h1_norm(const LogRadialField& u);

/// G(lambda) = int_{R^2} phi_p(|u|/lambda) dx. Returns +inf once any sample
/// exponent leaves the double range (lambda is then certainly too small).
double orlicz_integral(const LogRadialField& u, double lambda, int p);

/// Luxemburg norm inf{lambda > 0 : G(lambda) <= kappa}, by bracketed bisection
/// on log(lambda). Throws NonConvergence if the bracket cannot be formed.
double luxemburg_norm(const LogRadialField& u, const OrliczParams& params,
                      const LuxemburgOptions& options = {});

/// int_{R^2} (e^{alpha u^2} - sum_{k<p} alpha^k u^{2k}/k!) dx. Throws
/// OverflowError when the integrand leaves double range.
double tm_functional(const LogRadialField& u, double alpha, int p);

/// Lower bound for the embedding constant
///   kappa_p = sup_{||u||_{H^1} <= 1} int phi_p(sqrt(4 pi) u) dx
/// as the maximum over the given fields after H^1 normalisation.
double kappa_lower_bound(std::span<const LogRadialField> fields, int p = 1);

}  // namespace orliczlab
