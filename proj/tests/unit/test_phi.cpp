#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <cmath>
#include <limits>

#include "orliczlab/errors.hpp"
#include "orliczlab/phi.hpp"

using namespace orliczlab;

namespace {

using Big = boost::multiprecision::cpp_dec_float_50;

// sum_{k>=p} s^{2k}/k! in 50-digit arithmetic: the series for s^2 < 1, e^{s^2} minus the head otherwise.
double phi_reference(double s, int p) {
  const Big x = Big(s) * Big(s);
  Big term = 1;
  Big head = 0;
  for (int k = 0; k < p; ++k) {
    head += term;
    term *= x / Big(k + 1);
  }
  if (x >= 1) return static_cast<double>(exp(x) - head);
  Big tail = 0;
  for (int k = p; k < 400; ++k) {
    tail += term;
    term *= x / Big(k + 1);
    if (term < tail * Big("1e-45")) break;
  }
  return static_cast<double>(tail);
}

}  // namespace

TEST(Phi, ZeroArgumentVanishes) {
  for (int p = 1; p <= 5; ++p) EXPECT_EQ(phi_p(0.0, p), 0.0);
}

TEST(Phi, UnitArgumentP1) { EXPECT_NEAR(phi_p(1.0, 1), std::exp(1.0) - 1.0, 1e-15); }

TEST(Phi, SmallArgumentTailMatchesHighPrecision) {
  const double got = phi_p(0.01, 3);
  const double want = phi_reference(0.01, 3);
  EXPECT_NEAR(got / want, 1.0, 1e-14);
  EXPECT_NEAR(want, 1.6667e-13, 1e-16);
}

TEST(Phi, MatchesHighPrecisionAcrossRange) {
  for (int p = 1; p <= 4; ++p) {
    for (double s : {1e-6, 1e-3, 0.1, 0.3, 0.49, 0.5, 0.51, 0.8, 1.0, 2.0, 5.0, 10.0, 20.0, 26.0}) {
      const double want = phi_reference(s, p);
      EXPECT_NEAR(phi_p(s, p) / want, 1.0, 2e-14) << "s=" << s << " p=" << p;
      EXPECT_EQ(phi_p(-s, p), phi_p(s, p));
    }
  }
}

TEST(Phi, TailConstantBoundsTheRatio) {
  // phi_p(s) <= c_p s^{2p} e^{s^2}, with c_p = 1/p! the supremum of the ratio on a grid.
  for (int p = 1; p <= 4; ++p) {
    double ratio_max = 0.0;
    for (double s = 1e-3; s <= 10.0; s += 1e-3) {
      ratio_max = std::max(ratio_max, phi_p(s, p) / (std::pow(s, 2 * p) * std::exp(s * s)));
    }
    EXPECT_LE(ratio_max, phi_p_tail_constant(p) * (1.0 + 1e-12));
    EXPECT_GT(ratio_max, 0.99 * phi_p_tail_constant(p));
  }
}

TEST(Phi, OverflowGuard) {
  EXPECT_THROW(phi_p(std::sqrt(701.0), 1), OverflowError);
  EXPECT_NO_THROW(phi_p(std::sqrt(699.0), 1));
  EXPECT_THROW(phi_p(1.0, 0), InvalidArgument);
}

TEST(Phi, WeightedFormAvoidsOverflow) {
  const double x = 30.0;  // x^2 = 900 alone would overflow
  EXPECT_NEAR(phi_p_weighted(x, 1, -890.0), std::exp(10.0), 1e-9 * std::exp(10.0));
  EXPECT_EQ(phi_p_weighted(x, 1, 0.0), std::numeric_limits<double>::infinity());
  EXPECT_NEAR(phi_p_weighted(0.5, 2, std::log(3.0)), 3.0 * phi_p(0.5, 2), 1e-15);
}

TEST(Phi, InverseRoundTrip) {
  for (int p = 1; p <= 3; ++p) {
    for (double y : {1e-12, 1e-3, 0.1, 1.0 / 3.14159, 1.0, 10.0, 1e5}) {
      const double s = phi_p_inverse(y, p);
      EXPECT_NEAR(phi_p(s, p) / y, 1.0, 1e-12) << "y=" << y << " p=" << p;
    }
  }
  EXPECT_EQ(phi_p_inverse(0.0, 2), 0.0);
}
