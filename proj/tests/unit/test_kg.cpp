#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "orliczlab/errors.hpp"
#include "orliczlab/kg.hpp"

using namespace orliczlab;

namespace {

constexpr double kPi = std::numbers::pi;

CauchyData bump_data(double amplitude, double velocity = 0.0, double radius = 1.0) {
  auto shape = [radius](double r) { return r >= radius ? 0.0 : std::pow(1.0 - (r / radius) * (r / radius), 4); };
  return {[=](double r) { return amplitude * shape(r); }, [=](double r) { return velocity * shape(r); }, radius};
}

double factorial(int n) { return std::tgamma(n + 1.0); }

double sup_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(Nonlinearity, ValuesAndOrdering) {
  for (int p = 1; p <= 4; ++p) EXPECT_EQ(F_p(0.0, p), 0.0);
  EXPECT_NEAR(F_p(0.1, 1), 0.1 * std::expm1(0.04 * kPi), 1e-15);
  for (double u : {-3.0, -1.0, -0.1, 0.1, 1.0, 3.0}) {
    for (int p = 2; p <= 6; ++p) {
      EXPECT_LE(std::abs(F_p(u, p)), std::abs(F_p(u, 2)));
      EXPECT_LE(std::abs(F_p(u, p)), std::abs(F_p(u, 1)));
      EXPECT_EQ(F_p(-u, p), -F_p(u, p));
      EXPECT_EQ(std::signbit(F_p(u, p)), std::signbit(u));
    }
  }
}

TEST(Nonlinearity, PotentialDensityMatchesDirectSum) {
  for (int p = 1; p <= 3; ++p) {
    for (double u : {0.3, 0.6, 1.0}) {
      const double x = 4.0 * kPi * u * u;
      double direct = std::exp(x) - 1.0;
      for (int k = 2; k <= p; ++k) direct -= std::pow(x, k) / factorial(k);
      EXPECT_NEAR(potential_density(u, p), direct / (4.0 * kPi), 1e-12 * direct);
    }
  }
}

TEST(Energy, ZeroAndPureVelocity) {
  auto zero = initial_state({[](double) { return 0.0; }, [](double) { return 0.0; }, 0.0}, 4.0, 1.0 / 32.0, 1);
  const auto e0 = energy(zero);
  EXPECT_EQ(e0.total, 0.0);
  EXPECT_EQ(e0.classification, Criticality::Subcritical);

  // ut = e^{-r^2}: ||g||^2 = pi/2.
  auto velocity = initial_state({[](double) { return 0.0; }, [](double r) { return std::exp(-r * r); }, 3.0},
                                8.0, 1.0 / 128.0, 1);
  const auto e = energy(velocity);
  EXPECT_EQ(e.gradient, 0.0);
  EXPECT_EQ(e.potential, 0.0);
  EXPECT_NEAR(e.total, kPi / 2.0, 1e-4);
  EXPECT_EQ(e.total, e.kinetic + e.gradient + e.potential);
}

TEST(Energy, SmallAmplitudePotentialExcess) {
  // potential - ||u||^2 ~ (4 pi)^p/(p+1)! ||u||_{2p+2}^{2p+2}; for A e^{-r^2} the norm is A^q pi/q.
  const double A = 0.05;
  for (int p = 1; p <= 3; ++p) {
    const auto state =
        initial_state({[A](double r) { return A * std::exp(-r * r); }, [](double) { return 0.0; }, 5.0}, 8.0,
                      1.0 / 128.0, p);
    const auto w = radial_weights(state.nodes(), state.dr);
    double mass = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) mass += w[i] * state.u[i] * state.u[i];
    const double excess = energy(state).potential - mass;
    const double q = 2.0 * p + 2.0;
    const double expected = std::pow(4.0 * kPi, p) / factorial(p + 1) * std::pow(A, q) * kPi / q;
    EXPECT_NEAR(excess / expected, 1.0, 0.05) << "p=" << p;
  }
}

TEST(Classification, Thresholds) {
  EXPECT_EQ(classify(0.5), Criticality::Subcritical);
  EXPECT_EQ(classify(1.0), Criticality::Critical);
  EXPECT_EQ(classify(1.2), Criticality::Supercritical);
  EXPECT_EQ(classify(1.05, 0.1), Criticality::Critical);
  EXPECT_STREQ(to_string(Criticality::Supercritical), "supercritical");
}

TEST(Step, CflAndOverflow) {
  auto state = initial_state(bump_data(0.3), 4.0, 1.0 / 32.0, 1);
  EXPECT_THROW(step(state, 0.6 / 32.0, Dynamics::Nonlinear), CflViolation);
  auto big = initial_state(bump_data(10.0), 4.0, 1.0 / 32.0, 1);
  try {
    step(big, 0.25 / 32.0, Dynamics::Nonlinear);
    FAIL() << "expected overflow";
  } catch (const OverflowError& e) {
    EXPECT_NE(std::string(e.what()).find("u = "), std::string::npos);
  }
}

TEST(Evolve, ZeroDataStaysZero) {
  const EvolveOptions opt{4.0, 1.0 / 32.0, 1.0 / 128.0, 1.0, 1, 16};
  const auto traj = evolve({[](double) { return 0.0; }, [](double) { return 0.0; }, 0.0}, opt);
  ASSERT_FALSE(traj.snapshots.empty());
  for (const auto& s : traj.snapshots) {
    EXPECT_TRUE(std::all_of(s.u.begin(), s.u.end(), [](double v) { return v == 0.0; }));
    EXPECT_EQ(s.energy.total, 0.0);
  }
}

TEST(Evolve, SupportConditionEnforced) {
  const EvolveOptions opt{3.0, 1.0 / 32.0, 1.0 / 128.0, 2.5, 1, 16};
  EXPECT_THROW(evolve(bump_data(0.1), opt), InvalidArgument);
}

TEST(Evolve, FinitePropagationSpeed) {
  const double T = 2.0;
  const EvolveOptions opt{6.0, 1.0 / 64.0, 1.0 / 256.0, T, 1, 64};
  const auto traj = evolve_free(bump_data(0.5, 0.2), opt);
  const auto state = traj.state_at(traj.snapshots.size() - 1);
  EXPECT_NEAR(state.t, T, 1e-12);
  double beyond = 0.0;
  for (std::size_t i = 0; i < state.nodes(); ++i) {
    if (state.r(i) >= 1.0 + T + 0.5) beyond = std::max(beyond, std::abs(state.u[i]));
  }
  EXPECT_LE(beyond, 1e-10);
}

TEST(Evolve, TimeReversal) {
  const double dr = 1.0 / 64.0;
  const auto start = initial_state(bump_data(0.35, 0.1), 6.0, dr, 1);
  auto forward = advance(start, 2.0, 0.25 * dr, Dynamics::Nonlinear);
  const auto back = advance(forward, 2.0, -0.25 * dr, Dynamics::Nonlinear);
  const double scale = *std::max_element(start.u.begin(), start.u.end());
  EXPECT_LE(sup_abs_diff(back.u, start.u) / scale, 1e-8);
  EXPECT_LE(sup_abs_diff(back.ut, start.ut) / scale, 1e-8);
}

TEST(EvolveFree, EnergyConservedAndLinear) {
  // The leapfrog energy error is O(dt^2): 1e-6 needs dt = dr/32 at dr = 1/64.
  double previous_drift = 0.0;
  for (double dt : {1.0 / 1024.0, 1.0 / 2048.0}) {
    const EvolveOptions opt{12.0, 1.0 / 64.0, dt, 10.0, 1, static_cast<int>(std::lround(0.5 / dt))};
    const auto traj = evolve_free(bump_data(0.5, 0.2), opt);
    const double e0 = traj.snapshots.front().energy.total;
    double drift = 0.0;
    for (const auto& s : traj.snapshots) drift = std::max(drift, std::abs(s.energy.total - e0) / e0);
    if (previous_drift > 0.0) {
      EXPECT_LE(drift, 1e-6);
      EXPECT_NEAR(previous_drift / drift, 4.0, 0.5);
    }
    previous_drift = drift;
  }

  const EvolveOptions short_opt{5.0, 1.0 / 64.0, 1.0 / 256.0, 1.0, 1, 64};
  const auto one = evolve_free(bump_data(0.5, 0.2), short_opt);
  const auto two = evolve_free(bump_data(1.0, 0.4), short_opt);
  for (std::size_t k = 0; k < one.snapshots.size(); ++k) {
    std::vector<double> doubled(one.snapshots[k].u);
    for (double& v : doubled) v *= 2.0;
    EXPECT_LE(sup_abs_diff(doubled, two.snapshots[k].u), 1e-14);
  }
}

TEST(EvolveFree, AgreesWithNonlinearAtTinyAmplitude) {
  // For p >= 2 the nonlinearity is O(u^5), well below 1e-9 A at A = 1e-4.
  const double A = 1e-4;
  for (int p = 2; p <= 3; ++p) {
    const EvolveOptions opt{5.0, 1.0 / 64.0, 1.0 / 256.0, 1.0, p, 64};
    const auto nl = evolve(bump_data(A), opt);
    const auto fr = evolve_free(bump_data(A), opt);
    for (std::size_t k = 0; k < nl.snapshots.size(); ++k) {
      EXPECT_LE(sup_abs_diff(nl.snapshots[k].u, fr.snapshots[k].u), 1e-9 * A);
    }
  }
}

TEST(KineticGap, TrivialCasesAndMismatch) {
  const EvolveOptions opt{5.0, 1.0 / 32.0, 1.0 / 128.0, 1.0, 1, 16};
  const auto a = evolve(bump_data(0.3), opt);
  EXPECT_EQ(kinetic_energy_gap(a, a), 0.0);
  const CauchyData zero{[](double) { return 0.0; }, [](double) { return 0.0; }, 0.0};
  EXPECT_EQ(kinetic_energy_gap(evolve(zero, opt), evolve_free(zero, opt)), 0.0);
  auto other = opt;
  other.dr = 1.0 / 64.0;
  EXPECT_THROW(kinetic_energy_gap(a, evolve_free(bump_data(0.3), other)), GridMismatch);
}

TEST(Holder, QuarterNormOnPairs) {
  const std::vector<double> r{0.0, 1.0};
  const std::vector<double> u{0.0, 1.0};
  EXPECT_DOUBLE_EQ(holder_quarter_norm(r, u), 2.0);
  // Pairs farther than 1 apart do not enter the quotient.
  const std::vector<double> r2{0.0, 2.0};
  EXPECT_DOUBLE_EQ(holder_quarter_norm(r2, u), 1.0);
  const std::vector<double> r3{0.0, 0.0625};
  const std::vector<double> u3{0.0, 0.5};
  EXPECT_DOUBLE_EQ(holder_quarter_norm(r3, u3), 0.5 + 0.5 / 0.5);
}

TEST(LogInequality, GuardAndArguments) {
  const auto zero = LogRadialField::zero(-1.0, 2.0, 1.0 / 64.0);
  const auto res = log_inequality_check(zero, 1.0, 1.0);
  EXPECT_TRUE(res.guarded);
  EXPECT_EQ(res.ratio, 0.0);
  EXPECT_THROW(log_inequality_check(zero, 0.0, 1.0), InvalidArgument);
  EXPECT_THROW(log_inequality_check(zero, 1.5, 1.0), InvalidArgument);
  EXPECT_THROW(log_inequality_check(zero, 1.0, 0.5), InvalidArgument);
}

TEST(LogInequality, BumpStableUnderRefinement) {
  auto bump = [](double r) { return r >= 1.0 ? 0.0 : std::pow(1.0 - r * r, 4); };
  const auto coarse = LogRadialField::from_radial(bump, 0.0, 8.0, 1.0 / 128.0);
  const auto fine = LogRadialField::from_radial(bump, 0.0, 8.0, 1.0 / 512.0);
  const double a = log_inequality_check(coarse, 1.0, 1.0).ratio;
  const double b = log_inequality_check(fine, 1.0, 1.0).ratio;
  EXPECT_GT(a, 0.0);
  EXPECT_NEAR(a / b, 1.0, 0.05);
}

TEST(LocalEnergy, ZeroAndFullBall) {
  const CauchyData zero{[](double) { return 0.0; }, [](double) { return 0.0; }, 0.0};
  EXPECT_EQ(local_energy(initial_state(zero, 4.0, 1.0 / 32.0, 1), 2.0), 0.0);

  const double T = 1.5;
  const EvolveOptions opt{6.0, 1.0 / 64.0, 1.0 / 256.0, T, 1, 64};
  const auto traj = evolve_free(bump_data(0.5, 0.2), opt);
  const auto state = traj.state_at(traj.snapshots.size() - 1);
  const double total = energy(state, Dynamics::Free).total;
  EXPECT_NEAR(local_energy(state, 1.0 + T + 0.5, Dynamics::Free), total, 1e-8 * total);
  EXPECT_EQ(boundary_flux(initial_state(zero, 4.0, 1.0 / 32.0, 1), 2.0), 0.0);
}

TEST(FluxBalance, ZeroRunIsBalanced) {
  const EvolveOptions opt{4.0, 1.0 / 32.0, 1.0 / 128.0, 0.5, 1, 8};
  const auto traj = evolve({[](double) { return 0.0; }, [](double) { return 0.0; }, 0.0}, opt);
  for (double v : flux_balance(traj, 1.0)) EXPECT_EQ(v, 0.0);
}

TEST(Predicates, Admissibility) {
  EXPECT_TRUE(strichartz_admissible(4.0, 8.0 / 3.0));
  EXPECT_FALSE(strichartz_admissible(8.0, 16.0));
  EXPECT_FALSE(strichartz_admissible(2.0, 4.0));
  EXPECT_TRUE(lebesgue_controlled(8.0, 16.0));
  EXPECT_FALSE(lebesgue_controlled(2.0, 2.0));
}

TEST(Diagnostics, TrajectoryTableAndNorms) {
  const EvolveOptions opt{5.0, 1.0 / 32.0, 1.0 / 128.0, 1.0, 1, 16};
  const auto traj = evolve(bump_data(0.3), opt);
  const auto rows = trajectory_table(traj, {});
  ASSERT_EQ(rows.size(), traj.snapshots.size());
  EXPECT_NEAR(rows.front().linf, 0.3, 1e-12);
  EXPECT_GT(rows.front().lux_norm, 0.0);
  EXPECT_GE(rows.front().holder14, rows.front().linf);
  EXPECT_GT(l4_holder_norm(traj), 0.0);
  EXPECT_GT(lq_lr_norm(traj, 8.0, 16.0), 0.0);
  EXPECT_THROW(lq_lr_norm(traj, 2.0, 2.0), InvalidArgument);
  EXPECT_GE(max_luxemburg_norm(traj, {}), rows.front().lux_norm);
}

TEST(Diagnostics, LogRadialResample) {
  const auto state = initial_state(bump_data(0.3), 4.0, 1.0 / 64.0, 1);
  const auto v = to_log_radial(state);
  const double r = 0.5;
  EXPECT_NEAR(v.at(-std::log(r)), 0.3 * std::pow(1.0 - r * r, 4), 1e-4);
}

TEST(InitialEnergy, ClassifiesSubcriticalBump) {
  const auto est = initial_energy(bump_data(0.3), 4.0, 1.0 / 64.0, 1);
  EXPECT_LT(est.energy, 1.0);
  EXPECT_LT(est.error, 1e-3 * est.energy);
  EXPECT_EQ(est.classification, Criticality::Subcritical);
}
