#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "orliczlab/errors.hpp"
#include "orliczlab/field2d.hpp"
#include "orliczlab/orlicz.hpp"
#include "orliczlab/phi.hpp"
#include "orliczlab/profiles.hpp"

using namespace orliczlab;

namespace {

constexpr double kPi = std::numbers::pi;

LogRadialField disk(double a) { return LogRadialField(0.0, 0.125, std::vector<double>(9, a)); }

LogRadialField gaussian(double w, double ds = 1.0 / 256.0) {
  return LogRadialField::from_radial([w](double r) { return std::exp(-r * r / (w * w)); }, -std::log(10.0 * w),
                                     -std::log(1e-5 * w), ds);
}

// Luxemburg norm by bisection on a Cartesian midpoint quadrature of a radial function.
double cartesian_luxemburg(const std::function<double(double)>& u, double half_width, int n, int p, double kappa) {
  const double h = 2.0 * half_width / n;
  std::vector<double> samples;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = -half_width + (i + 0.5) * h;
      const double y = -half_width + (j + 0.5) * h;
      samples.push_back(std::abs(u(std::hypot(x, y))));
    }
  }
  auto G = [&](double lambda) {
    double sum = 0.0;
    for (double v : samples) sum += phi_p(v / lambda, p);
    return sum * h * h;
  };
  double lo = 0.1;
  double hi = 1e3;
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    (G(mid) > kappa ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

TEST(OrliczParams, Validation) {
  EXPECT_THROW((OrliczParams{0, 1.0, 0.0}.validate()), InvalidArgument);
  EXPECT_THROW((OrliczParams{1, 0.0, 0.0}.validate()), InvalidArgument);
  EXPECT_NO_THROW((OrliczParams{2, 0.5, 0.0}.validate()));
}

TEST(Norms, MoserGradientIsOne) {
  const auto u = LogRadialField::sample([](double s) { return std::clamp(s, 0.0, 1.0) / std::sqrt(2.0 * kPi); },
                                        -1.0, 2.0, 1.0 / 64.0);
  EXPECT_NEAR(grad_l2_norm_sq(u), 1.0, 1e-13);
}

TEST(Norms, DiskLq) {
  for (double q : {1.0, 2.0, 3.5, 8.0}) EXPECT_NEAR(lq_norm(disk(1.0), q), std::pow(kPi, 1.0 / q), 1e-13);
}

TEST(Norms, GaussianClosedForms) {
  const double w = 0.7;
  const auto g = gaussian(w);
  EXPECT_NEAR(grad_l2_norm_sq(g), kPi, 1e-4);
  for (double q : {2.0, 4.0}) EXPECT_NEAR(std::pow(lq_norm(g, q), q) / (kPi * w * w / q), 1.0, 1e-5);
  EXPECT_NEAR(h1_norm(g), std::sqrt(kPi + kPi * w * w / 2.0), 1e-4);
}

TEST(Norms, CartesianCrossCheck) {
  const double w = 0.5;
  const auto g = gaussian(w, 1.0 / 512.0);
  const auto f = Field2D::sample([w](Point2 p) { return std::exp(-(p.x * p.x + p.y * p.y) / (w * w)); }, 801, 4.0);
  for (double q : {2.0, 4.0}) {
    const double cart = std::pow(f.lq_norm_q(q), 1.0 / q);
    EXPECT_NEAR(lq_norm(g, q) / cart, 1.0, 1e-6) << "q=" << q;
  }
}

TEST(Luxemburg, ZeroField) { EXPECT_EQ(luxemburg_norm(LogRadialField::zero(0.0, 1.0, 0.1), {}), 0.0); }

TEST(Luxemburg, DiskClosedForm) {
  for (double a : {0.5, 1.0, 2.0}) {
    for (int p : {1, 2, 3}) {
      for (double kappa : {0.5, 1.0, 2.0}) {
        const double exact = a / phi_p_inverse(kappa / kPi, p);
        EXPECT_NEAR(luxemburg_norm(disk(a), {p, kappa, 0.0}) / exact, 1.0, 1e-8);
      }
    }
  }
}

TEST(Luxemburg, Homogeneity) {
  const auto g = gaussian(0.8);
  for (int p : {1, 2}) {
    const double base = luxemburg_norm(g, {p, 1.0, 0.0});
    EXPECT_NEAR(luxemburg_norm(g.scaled(2.5), {p, 1.0, 0.0}) / (2.5 * base), 1.0, 1e-10);
    EXPECT_NEAR(luxemburg_norm(g.scaled(-2.5), {p, 1.0, 0.0}) / (2.5 * base), 1.0, 1e-10);
  }
}

TEST(Luxemburg, DecreasesWithKappa) {
  const auto g = gaussian(1.0);
  EXPECT_GT(luxemburg_norm(g, {1, 0.5, 0.0}), luxemburg_norm(g, {1, 2.0, 0.0}));
}

TEST(Luxemburg, IndependentCartesianOracle) {
  const double w = 0.6;
  const auto g = gaussian(w, 1.0 / 512.0);
  for (int p : {1, 2}) {
    const double oracle = cartesian_luxemburg([w](double r) { return std::exp(-r * r / (w * w)); }, 3.0, 600, p, 1.0);
    EXPECT_NEAR(luxemburg_norm(g, {p, 1.0, 0.0}) / oracle, 1.0, 1e-5) << "p=" << p;
  }
}

TEST(Luxemburg, SatisfiesDefiningEquation) {
  const auto psi = moser_profile(1.0, 2.0);
  const auto g = elementary_concentration(psi, 50.0);
  const double lambda = luxemburg_norm(g, {1, 1.0, 0.0});
  EXPECT_NEAR(orlicz_integral(g, lambda, 1), 1.0, 1e-8);
  EXPECT_GT(orlicz_integral(g, 0.99 * lambda, 1), 1.0);
}

TEST(TrudingerMoser, TrivialCases) {
  EXPECT_EQ(tm_functional(LogRadialField::zero(0.0, 1.0, 0.1), 3.0, 1), 0.0);
  EXPECT_EQ(tm_functional(gaussian(1.0), 0.0, 1), 0.0);
}

TEST(TrudingerMoser, MoserFieldRichardson) {
  // Moser field with ||grad u|| = 1, alpha = 2 pi, p = 2: fine-grid value against a Richardson
  // extrapolation of two coarser grids, then the bound c ||u||_4^4 with a finite c.
  auto moser = [](double ds) {
    return LogRadialField::sample(
        [](double s) { return std::clamp(s, 0.0, 3.0) / std::sqrt(2.0 * kPi * 3.0); }, -1.0, 4.0, ds);
  };
  const double coarse = tm_functional(moser(1.0 / 8.0), 2.0 * kPi, 2);
  const double mid = tm_functional(moser(1.0 / 16.0), 2.0 * kPi, 2);
  const double fine = tm_functional(moser(1.0 / 256.0), 2.0 * kPi, 2);
  const double extrapolated = mid + (mid - coarse) / 3.0;
  EXPECT_NEAR(fine / extrapolated, 1.0, 1e-5);
  const auto u = moser(1.0 / 256.0);
  const double ratio = fine / std::pow(lq_norm(u, 4.0), 4.0);
  EXPECT_TRUE(std::isfinite(ratio));
  EXPECT_LT(ratio, 100.0);
}

TEST(TrudingerMoser, OverflowRaises) {
  EXPECT_THROW(tm_functional(disk(30.0), 1.0, 1), OverflowError);
}

TEST(Kappa, LowerBoundIsScaleFree) {
  const std::vector<LogRadialField> one{gaussian(1.0)};
  const std::vector<LogRadialField> scaled{gaussian(1.0).scaled(3.0)};
  EXPECT_NEAR(kappa_lower_bound(one, 1), kappa_lower_bound(scaled, 1), 1e-12);
  EXPECT_GT(kappa_lower_bound(one, 1), kappa_lower_bound(one, 2));
}
