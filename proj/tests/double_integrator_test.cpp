#include "geoctrl/double_integrator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <optional>
#include <random>

using geoctrl::DIPlan;
using geoctrl::DIState;

namespace {

// Independent minimum-time oracle. A bang-bang plan (u for time ts, then -u
// until the velocity hits zero at the origin) reaches the origin exactly when
//   G(ts) = x1(ts) + x2(ts)^2 / (2u) = 0,
// which is just the statement that the second parabola passes through 0.
// Scan G for sign changes on a grid, bisect each bracket, and take the best
// total time over both first-control signs. No optimal-synthesis formulas
// are used anywhere here.
struct OracleArc {
  double x1, x2;
};

OracleArc oracle_arc(const DIState& s, double u, double t) {
  return {s.x1 + s.x2 * t + 0.5 * u * t * t, s.x2 + u * t};
}

std::optional<double> oracle_total_time(const DIState& s, double u, double ts) {
  const OracleArc a = oracle_arc(s, u, ts);
  const double t2 = a.x2 / u;  // second control is -u; velocity reaches 0 at t2
  if (t2 < -1e-9) return std::nullopt;
  return ts + std::max(t2, 0.0);
}

double oracle_g(const DIState& s, double u, double ts) {
  const OracleArc a = oracle_arc(s, u, ts);
  return a.x1 + a.x2 * a.x2 / (2.0 * u);
}

double oracle_min_time(const DIState& s) {
  const double span = std::abs(s.x2) + std::sqrt(s.x2 * s.x2 + 2.0 * std::abs(s.x1)) + 1.0;
  double best = std::numeric_limits<double>::infinity();
  for (double u : {+1.0, -1.0}) {
    const int grid = 4000;
    double prev_ts = 0.0;
    double prev_g = oracle_g(s, u, 0.0);
    if (std::abs(prev_g) < 1e-14) {
      if (const auto total = oracle_total_time(s, u, 0.0)) best = std::min(best, *total);
    }
    for (int i = 1; i <= grid; ++i) {
      const double ts = span * i / grid;
      const double g = oracle_g(s, u, ts);
      if ((prev_g < 0.0) != (g < 0.0)) {
        double lo = prev_ts, hi = ts;
        for (int it = 0; it < 100 && hi - lo > 1e-13; ++it) {
          const double mid = 0.5 * (lo + hi);
          ((oracle_g(s, u, mid) < 0.0) == (prev_g < 0.0) ? lo : hi) = mid;
        }
        if (const auto total = oracle_total_time(s, u, 0.5 * (lo + hi))) {
          best = std::min(best, *total);
        }
      }
      prev_ts = ts;
      prev_g = g;
    }
  }
  return best;
}

}  // namespace

TEST(DIFeedback, SignsAroundTheSwitchingCurve) {
  EXPECT_EQ(geoctrl::di_feedback({0.0, 0.0}), 0);
  EXPECT_EQ(geoctrl::di_feedback({1.0, 0.0}), -1);   // above the curve
  EXPECT_EQ(geoctrl::di_feedback({-1.0, 0.0}), +1);  // below
  EXPECT_EQ(geoctrl::di_feedback({2.0, -2.0}), +1);  // on the lower branch
  EXPECT_EQ(geoctrl::di_feedback({-2.0, 2.0}), -1);  // on the upper branch
  EXPECT_EQ(geoctrl::di_feedback({5.0, 1.0}), -1);
  EXPECT_EQ(geoctrl::di_feedback({-5.0, -1.0}), +1);
}

TEST(DIFeedback, OriginToleranceIsTight) {
  EXPECT_EQ(geoctrl::di_feedback({5e-13, 0.0}), 0);
  EXPECT_NE(geoctrl::di_feedback({1e-6, 0.0}), 0);
  EXPECT_THROW(geoctrl::di_feedback({std::nan(""), 0.0}), std::invalid_argument);
}

TEST(DIMinTime, CanonicalFixture) {
  const DIPlan plan = geoctrl::di_min_time({1.0, 0.0});
  EXPECT_EQ(plan.u_first, -1);
  EXPECT_NEAR(plan.t_switch, 1.0, 1e-12);
  EXPECT_NEAR(plan.t_total, 2.0, 1e-12);
}

TEST(DIMinTime, OnCurveSingleArc) {
  const DIPlan plan = geoctrl::di_min_time({2.0, -2.0});
  EXPECT_EQ(plan.u_first, +1);
  EXPECT_NEAR(plan.t_switch, 2.0, 1e-12);
  EXPECT_NEAR(plan.t_total, 2.0, 1e-12);
}

TEST(DIMinTime, CentralSymmetry) {
  std::mt19937 gen(37);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const DIState s{u(gen), u(gen)};
    const DIPlan a = geoctrl::di_min_time(s);
    const DIPlan b = geoctrl::di_min_time({-s.x1, -s.x2});
    EXPECT_EQ(a.u_first, -b.u_first);
    EXPECT_DOUBLE_EQ(a.t_total, b.t_total);
    EXPECT_DOUBLE_EQ(a.t_switch, b.t_switch);
  }
}

TEST(DIMinTime, MatchesGridBisectionOracle) {
  std::mt19937 gen(41);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 60; ++trial) {
    const DIState s{u(gen), u(gen)};
    const double want = oracle_min_time(s);
    const double got = geoctrl::di_min_time(s).t_total;
    EXPECT_NEAR(got, want, 1e-6) << "state (" << s.x1 << ", " << s.x2 << ")";
  }
}

TEST(DISimulate, TrajectoriesEndAtTheOrigin) {
  std::mt19937 gen(43);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const DIState s{u(gen), u(gen)};
    const auto plan = geoctrl::di_min_time(s);
    const auto traj = geoctrl::di_simulate(s, plan, 101);
    ASSERT_EQ(traj.size(), 101u);
    EXPECT_DOUBLE_EQ(traj.front().t, 0.0);
    EXPECT_NEAR(traj.front().state.x1, s.x1, 1e-15);
    const auto& last = traj.back();
    EXPECT_NEAR(last.t, plan.t_total, 1e-12);
    EXPECT_LT(std::hypot(last.state.x1, last.state.x2), 1e-9);
  }
}

TEST(DISimulate, BellmanConsistencyAlongTheTrajectory) {
  std::mt19937 gen(47);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int trial = 0; trial < 25; ++trial) {
    const DIState s{u(gen), u(gen)};
    const auto plan = geoctrl::di_min_time(s);
    if (plan.t_total < 1e-6) continue;
    const auto traj = geoctrl::di_simulate(s, plan, 41);
    for (const auto& smp : traj) {
      const double remaining = geoctrl::di_min_time(smp.state).t_total;
      EXPECT_NEAR(remaining, plan.t_total - smp.t, 1e-9)
          << "t = " << smp.t << " of " << plan.t_total;
    }
  }
}

TEST(DISimulate, FeedbackAgreesWithThePlanAwayFromTheSwitch) {
  const DIState s{1.0, 0.0};
  const auto plan = geoctrl::di_min_time(s);
  const auto traj = geoctrl::di_simulate(s, plan, 201);
  for (const auto& smp : traj) {
    if (std::abs(smp.t - plan.t_switch) < 1e-6) continue;  // switch sample may sit on the curve
    if (std::hypot(smp.state.x1, smp.state.x2) < 1e-6) continue;
    EXPECT_EQ(geoctrl::di_feedback(smp.state), smp.u) << "t = " << smp.t;
  }
}

TEST(DISimulate, ValidatesSampleCount) {
  EXPECT_THROW(geoctrl::di_simulate({1.0, 0.0}, geoctrl::di_min_time({1.0, 0.0}), 1),
               std::invalid_argument);
}

TEST(DIMinTime, OriginReturnsZeroPlan) {
  const auto plan = geoctrl::di_min_time({0.0, 0.0});
  EXPECT_EQ(plan.u_first, 0);
  EXPECT_EQ(plan.t_total, 0.0);
  const auto traj = geoctrl::di_simulate({0.0, 0.0}, plan, 5);
  for (const auto& smp : traj) {
    EXPECT_EQ(smp.state.x1, 0.0);
    EXPECT_EQ(smp.state.x2, 0.0);
  }
}
