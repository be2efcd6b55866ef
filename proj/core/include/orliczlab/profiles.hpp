#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orliczlab/field2d.hpp"
#include "orliczlab/log_radial_field.hpp"
#include "orliczlab/orlicz.hpp"

namespace orliczlab {

/// Sampled profile psi on [0, S_max]; psi = 0 for s < 0 and psi keeps its last
/// value beyond S_max.
class Profile {
 public:
  Profile() = default;
  Profile(double dsig, std::vector<double> psi);

  static Profile sample(const std::function<double(double)>& psi, double s_max, double dsig);

  double dsig() const noexcept { return dsig_; }
  double s_max() const noexcept { return dsig_ * static_cast<double>(psi_.size() - 1); }
  std::size_t size() const noexcept { return psi_.size(); }
  std::span<const double> values() const noexcept { return psi_; }
  double s_at(std::size_t i) const noexcept { return dsig_ * static_cast<double>(i); }
  double at(double s) const noexcept;

  Profile scaled(double c) const;
  /// psi'(.) squared L^2 norm of the linear interpolant.
  double derivative_l2_sq() const noexcept;
  double derivative_l2() const noexcept;
  /// int_0^inf psi^2 e^{-2s} ds (finite by construction).
  double weighted_l2_sq() const;
  /// max over grid points s > 0 of |psi(s)|/sqrt(s).
  double max_ratio_sqrt() const noexcept;
  /// max over grid pairs of |psi(s)-psi(t)| - ||psi'|| |s-t|^{1/2}; <= 0 when the
  /// Hoelder-1/2 bound holds.
  double holder_half_excess() const noexcept;
  /// ||psi'_a - psi'_b||_{L^2}; the grids may differ (compared on the finer step).
  static double derivative_distance(const Profile& a, const Profile& b);
  /// max |psi| on [0, a) relative to max |psi|; 0 means psi is null on [0, a).
  double relative_mass_before(double a) const noexcept;

 private:
  double dsig_ = 1.0 / 512.0;
  std::vector<double> psi_;
};

/// psi(s) = min(s, a)/sqrt(a): ||psi'|| = 1, max psi(s)/sqrt(s) = 1 at s = a.
Profile moser_profile(double a, double s_max, double dsig = 1.0 / 512.0);

/// Shifted Moser profile null on [0, shift): psi(s) = moser(s - shift).
Profile shifted_moser_profile(double a, double shift, double s_max, double dsig = 1.0 / 512.0);

/// Scale sequence n -> alpha_n, parametric: c n^gamma or c beta^n.
struct ScaleDescriptor {
  enum class Form { Power, Geometric };
  Form form = Form::Power;
  double c = 1.0;
  double gamma = 1.0;
  double beta = 2.0;

  double operator()(double n) const;
  double log_at(double n) const;
  void validate() const;
  bool operator==(const ScaleDescriptor&) const = default;
};

/// Core sequence n -> x_n = base + (c e^{-rate n^gamma}, 0). c = 0 is a fixed point.
struct CoreDescriptor {
  Point2 base{};
  double c = 0.0;
  double rate = 0.0;
  double gamma = 1.0;

  Point2 operator()(double n) const;
  bool operator==(const CoreDescriptor& o) const {
    return base.x == o.base.x && base.y == o.base.y && c == o.c && rate == o.rate && gamma == o.gamma;
  }
};

/// log |x_n - y_n| without underflow for exponentially merging cores.
double log_core_distance(const CoreDescriptor& a, const CoreDescriptor& b, double n);

struct ConcentrationTriplet {
  ScaleDescriptor scale;
  CoreDescriptor core;
  Profile profile;
};

struct GridOptions {
  double ds = 1.0 / 256.0;
  std::size_t max_samples = std::size_t{1} << 21;
  /// Coarsen ds to fit max_samples instead of failing.
  bool coarsen = true;
};

/// g(x) = sqrt(alpha/2pi) psi(-log|x|/alpha) in log coordinates, on a grid
/// covering [-1, alpha S_max + 1].
LogRadialField elementary_concentration(const Profile& psi, double alpha,
                                        const GridOptions& grid = {});
LogRadialField elementary_concentration(const ConcentrationTriplet& t, double n,
                                        const GridOptions& grid = {});

/// sqrt(alpha/2pi) psi(-log|x - core|/alpha) sampled on a Cartesian grid.
Field2D elementary_concentration_2d(const Profile& psi, double alpha, Point2 core, std::size_t n,
                                    double half_width);

/// Sum of the concentrations at index n on one shared grid.
LogRadialField superpose(std::span<const ConcentrationTriplet> ts, double n,
                         const GridOptions& grid = {});

/// (2pi)^{1-q/2} alpha^{q/2+1} int_0^inf |psi|^q e^{-2 alpha s} ds, i.e. ||g||_{L^q}^q
/// evaluated on the profile side of the change of variables.
double elementary_lq_norm_q(const Profile& psi, double alpha, double q);

/// (1/sqrt(4pi)) max_{s>0} |psi(s)|/sqrt(s).
double concentration_limit_norm(const Profile& psi);

enum class OrthogonalityKind { ByScale, ByCore, Same, Undetermined };
std::string to_string(OrthogonalityKind kind);

struct OrthogonalityVerdict {
  OrthogonalityKind kind = OrthogonalityKind::Undetermined;
  double core_limit = 0.0;  ///< estimated a for ByCore
  double final_log_ratio = 0.0;
};

struct OrthogonalityOptions {
  double divergence_threshold = 5.0;
  double convergence_tol = 0.05;
  double null_tol = 1e-12;
};

OrthogonalityVerdict orthogonality_test(const ConcentrationTriplet& a, const ConcentrationTriplet& b,
                                        std::span<const double> n_range,
                                        const OrthogonalityOptions& options = {});

/// Luxemburg norm of the superposition at index n.
double sum_norm_limit(std::span<const ConcentrationTriplet> ts, double n,
                      const OrliczParams& params = {}, const GridOptions& grid = {});

/// Moser fields sqrt(alpha/2pi) min(s/alpha, 1) dilated by radius R, for kappa calibration.
std::vector<LogRadialField> moser_calibration_family(std::span<const double> alphas,
                                                     std::span<const double> radii,
                                                     double ds = 1.0 / 256.0);

/// Gaussians e^{-r^2/w^2} sampled on r in [w 1e-4, 8 w].
LogRadialField gaussian_field(double amplitude, double width, double ds = 1.0 / 256.0);
/// Compact bumps A (1 - (r/rho)^2)^k on r < rho.
LogRadialField bump_field(double amplitude, double radius, int k, double ds = 1.0 / 256.0);

/// Trial family for the embedding constant: Moser fields over (alpha, R), Gaussians
/// and bumps over a geometric ladder of widths.
std::vector<LogRadialField> kappa_calibration_family(double ds = 1.0 / 256.0);

}  // namespace orliczlab
