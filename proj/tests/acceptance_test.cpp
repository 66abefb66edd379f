#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "geoctrl/geoctrl.hpp"

// Acceptance gate: eight criteria, each as one test that prints a single
// [ACCEPT] line. Tolerances are pinned in the assertions; the oracles are
// self-contained so this binary shares no test logic with the unit suite.

namespace {

using geoctrl::DIState;
using geoctrl::kPi;
using geoctrl::kTwoPi;
using geoctrl::PlanarPose;

struct Reporter {
  int n;
  const char* label;
  ~Reporter() {
    std::printf("[ACCEPT] criterion %d (%s): %s\n", n, label,
                testing::Test::HasFailure() ? "fail" : "pass");
    std::fflush(stdout);
  }
};

// ---- criterion 1: Kalman rank == Gramian rank ------------------------------

TEST(Acceptance, C1KalmanGramianAgreement) {
  Reporter rep{1, "kalman rank equals gramian rank"};
  std::mt19937 gen(42);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::uniform_int_distribution<int> dim(1, 5), inputs(1, 2);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = dim(gen), m = inputs(gen);
    Eigen::MatrixXd a(n, n), b(n, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = entry(gen);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) b(i, j) = entry(gen);
    const geoctrl::LinearSystem sys(a, b);
    EXPECT_EQ(geoctrl::kalman_test(sys).rank, geoctrl::gramian_rank(sys, 2.0))
        << "trial " << trial;
  }

  const geoctrl::LinearSystem train((Eigen::MatrixXd(2, 2) << 0, 1, 0, 0).finished(),
                                    (Eigen::MatrixXd(2, 1) << 0, 1).finished());
  const geoctrl::LinearSystem oscillator((Eigen::MatrixXd(2, 2) << 0, 1, -1, 0).finished(),
                                         (Eigen::MatrixXd(2, 1) << 0, 1).finished());
  const geoctrl::LinearSystem deficient((Eigen::MatrixXd(2, 2) << -1, 0, 0, -2).finished(),
                                        (Eigen::MatrixXd(2, 1) << 1, 0).finished());
  EXPECT_EQ(geoctrl::kalman_test(train).rank, 2);
  EXPECT_EQ(geoctrl::gramian_rank(train, 2.0), 2);
  EXPECT_EQ(geoctrl::kalman_test(oscillator).rank, 2);
  EXPECT_EQ(geoctrl::gramian_rank(oscillator, 2.0), 2);
  EXPECT_EQ(geoctrl::kalman_test(deficient).rank, 1);
  EXPECT_EQ(geoctrl::gramian_rank(deficient, 2.0), 1);
}

// ---- criterion 2: Lie bracket fidelity -------------------------------------

TEST(Acceptance, C2LieBracketFidelity) {
  Reporter rep{2, "bracket closed forms and flow-commutator convergence"};
  const auto rs = geoctrl::systems::catalog("reeds-shepp");
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> pos(-3.0, 3.0), ang(-kPi, kPi);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd q(3);
    q << pos(gen), pos(gen), ang(gen);
    const Eigen::VectorXd br = geoctrl::bracket(rs.fields[0], rs.fields[1], q);
    EXPECT_NEAR(br(0), std::sin(q(2)), 1e-8);
    EXPECT_NEAR(br(1), -std::cos(q(2)), 1e-8);
    EXPECT_NEAR(br(2), 0.0, 1e-8);
  }

  const auto hb = geoctrl::systems::catalog("heisenberg");
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd q(3);
    q << pos(gen), pos(gen), pos(gen);
    const Eigen::VectorXd br = geoctrl::bracket(hb.fields[0], hb.fields[1], q);
    EXPECT_NEAR(br(0), 0.0, 1e-8);
    EXPECT_NEAR(br(1), 0.0, 1e-8);
    EXPECT_NEAR(br(2), 1.0, 1e-8);
  }

  // First-order convergence of the flow commutator: halving the leg time
  // should roughly halve the error against the Jacobian bracket.
  Eigen::VectorXd q(3);
  q << 0.4, -0.7, 1.1;
  const Eigen::VectorXd exact = geoctrl::bracket(rs.fields[0], rs.fields[1], q);
  const double t = 1e-2;
  const double e1 = (geoctrl::bracket_by_flows(rs.fields[0], rs.fields[1], q, t) - exact).norm();
  const double e2 =
      (geoctrl::bracket_by_flows(rs.fields[0], rs.fields[1], q, 0.5 * t) - exact).norm();
  ASSERT_GT(e2, 0.0);
  const double ratio = e1 / e2;
  EXPECT_GE(ratio, 1.5);
  EXPECT_LE(ratio, 2.5);
}

// ---- criterion 3: bracket-generating ranks ---------------------------------

TEST(Acceptance, C3LarcRanks) {
  Reporter rep{3, "iterated-bracket ranks on the system catalog"};
  const auto rank_at = [](const char* key, int depth) {
    const auto entry = geoctrl::systems::catalog(key);
    return geoctrl::larc_rank(entry.fields, entry.default_point, depth).rank;
  };
  EXPECT_EQ(rank_at("heisenberg", 2), 3);
  EXPECT_EQ(rank_at("dubins", 2), 3);
  EXPECT_EQ(rank_at("se2", 2), 3);
  EXPECT_EQ(rank_at("engel", 3), 4);
  EXPECT_EQ(rank_at("rolling-sphere", 3), 5);
}

// ---- criterion 4: minimum-time synthesis for the double integrator ---------
// Oracle: the bang-bang plan (u for ts, then -u) reaches the origin exactly
// when G(ts) = x1(ts) + x2(ts)^2/(2u) = 0; scan for sign changes, bisect,
// take the best feasible total time over both first-control signs.

struct OracleArc {
  double x1, x2;
};

OracleArc oracle_arc(const DIState& s, double u, double t) {
  return {s.x1 + s.x2 * t + 0.5 * u * t * t, s.x2 + u * t};
}

std::optional<double> oracle_total_time(const DIState& s, double u, double ts) {
  const OracleArc a = oracle_arc(s, u, ts);
  const double t2 = a.x2 / u;
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
    double prev_ts = 0.0, prev_g = oracle_g(s, u, 0.0);
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

TEST(Acceptance, C4TrainSynthesis) {
  Reporter rep{4, "time-optimal double integrator vs grid-bisection oracle"};
  std::mt19937 gen(4242);
  std::uniform_real_distribution<double> box(-5.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    const DIState s{box(gen), box(gen)};
    const geoctrl::DIPlan plan = geoctrl::di_min_time(s);
    EXPECT_NEAR(plan.t_total, oracle_min_time(s), 1e-6) << "trial " << trial;

    const auto traj = geoctrl::di_simulate(s, plan, 21);
    const DIState& end = traj.back().state;
    EXPECT_LT(std::hypot(end.x1, end.x2), 1e-6) << "trial " << trial;

    // Bellman consistency: the remaining time at every sample equals the
    // optimal time from that state.
    for (const auto& smp : traj) {
      EXPECT_NEAR(geoctrl::di_min_time(smp.state).t_total, plan.t_total - smp.t, 1e-9)
          << "trial " << trial << " t=" << smp.t;
    }
  }
  EXPECT_NEAR(geoctrl::di_min_time({1.0, 0.0}).t_total, 2.0, 1e-12);
}

// ---- criterion 5: Dubins shortest paths ------------------------------------
// Oracle: enumerate all 27 three-piece control patterns with u in {-1,0,+1},
// grid the first two durations (the third is forced by the heading or by
// projection), refine the most promising cells, and keep any candidate that
// lands within 1e-5 of the goal. No word geometry is shared with the solver.

struct OPose {
  double x, y, th;
};

OPose o_step(const OPose& p, int u, double s) {
  if (u == 0) return {p.x + s * std::cos(p.th), p.y + s * std::sin(p.th), p.th};
  const double th = p.th + u * s;
  return {p.x + (std::sin(th) - std::sin(p.th)) / u, p.y - (std::cos(th) - std::cos(p.th)) / u, th};
}

struct OCandidate {
  double err = std::numeric_limits<double>::infinity();
  double length = std::numeric_limits<double>::infinity();
};

OCandidate o_close(const OPose& start, const PlanarPose& goal, const std::array<int, 3>& pat,
                   double s1, double s2) {
  OCandidate c;
  if (s1 < 0.0 || s2 < 0.0) return c;
  const OPose p2 = o_step(o_step(start, pat[0], s1), pat[1], s2);
  double s3 = 0.0;
  if (pat[2] != 0) {
    s3 = geoctrl::mod_2pi(static_cast<double>(pat[2]) * (goal.theta - p2.th));
  } else {
    if (std::abs(geoctrl::normalize_angle(goal.theta - p2.th)) > 1e-7) return c;
    s3 = (goal.x - p2.x) * std::cos(p2.th) + (goal.y - p2.y) * std::sin(p2.th);
    if (s3 < 0.0) return c;
  }
  const OPose e = o_step(p2, pat[2], s3);
  c.err = std::hypot(e.x - goal.x, e.y - goal.y) +
          std::abs(geoctrl::normalize_angle(e.th - goal.theta));
  c.length = s1 + s2 + s3;
  return c;
}

double oracle_shortest(const PlanarPose& q0, const PlanarPose& q1) {
  const OPose start{q0.x, q0.y, q0.theta};
  const double reach = std::hypot(q1.x - q0.x, q1.y - q0.y) + 14.0;
  double best = std::numeric_limits<double>::infinity();
  for (int u1 = -1; u1 <= 1; ++u1) {
    for (int u2 = -1; u2 <= 1; ++u2) {
      for (int u3 = -1; u3 <= 1; ++u3) {
        const std::array<int, 3> pat{u1, u2, u3};
        const double r1 = (u1 == 0) ? reach : kTwoPi;
        const double r2 = (u2 == 0) ? reach : kTwoPi;
        constexpr int kGrid = 40;
        std::array<std::array<double, 2>, 4> seeds{};
        std::array<double, 4> seed_err;
        seed_err.fill(std::numeric_limits<double>::infinity());
        for (int i = 0; i <= kGrid; ++i) {
          for (int j = 0; j <= kGrid; ++j) {
            const double s1 = r1 * i / kGrid;
            const double s2 = r2 * j / kGrid;
            const OCandidate c = o_close(start, q1, pat, s1, s2);
            for (size_t k = 0; k < seeds.size(); ++k) {
              if (c.err < seed_err[k]) {
                for (size_t m = seeds.size() - 1; m > k; --m) {
                  seeds[m] = seeds[m - 1];
                  seed_err[m] = seed_err[m - 1];
                }
                seeds[k] = {s1, s2};
                seed_err[k] = c.err;
                break;
              }
            }
          }
        }
        for (size_t k = 0; k < seeds.size(); ++k) {
          if (!std::isfinite(seed_err[k])) continue;
          double c1 = seeds[k][0], c2 = seeds[k][1];
          double span1 = r1 / kGrid, span2 = r2 / kGrid;
          for (int round = 0; round < 10; ++round) {
            double best_err = std::numeric_limits<double>::infinity();
            double b1 = c1, b2 = c2;
            for (int i = -4; i <= 4; ++i) {
              for (int j = -4; j <= 4; ++j) {
                const double s1 = c1 + span1 * i / 4.0;
                const double s2 = c2 + span2 * j / 4.0;
                const OCandidate c = o_close(start, q1, pat, s1, s2);
                if (c.err < best_err) {
                  best_err = c.err;
                  b1 = s1;
                  b2 = s2;
                }
              }
            }
            c1 = b1;
            c2 = b2;
            span1 *= 0.35;
            span2 *= 0.35;
          }
          const OCandidate final_c = o_close(start, q1, pat, c1, c2);
          if (final_c.err < 1e-5) best = std::min(best, final_c.length);
        }
      }
    }
  }
  return best;
}

bool is_csc(geoctrl::DubinsWord w) {
  using geoctrl::DubinsWord;
  return w == DubinsWord::LSL || w == DubinsWord::RSR || w == DubinsWord::LSR ||
         w == DubinsWord::RSL;
}

TEST(Acceptance, C5DubinsShortestPaths) {
  Reporter rep{5, "bounded-curvature shortest paths"};
  std::mt19937 gen(777);
  std::uniform_real_distribution<double> pos(-5.0, 5.0), ang(-kPi, kPi);
  const auto random_pose = [&] { return PlanarPose{pos(gen), pos(gen), ang(gen)}; };

  for (int trial = 0; trial < 10000; ++trial) {
    const PlanarPose q0 = random_pose(), q1 = random_pose();
    const geoctrl::DubinsPath path = geoctrl::shortest_path(q0, q1);
    EXPECT_GE(path.length + 1e-12, std::hypot(q1.x - q0.x, q1.y - q0.y)) << "trial " << trial;
    const PlanarPose end = geoctrl::sample_path(path, q0, 8).back();
    const double pos_err = std::hypot(end.x - q1.x, end.y - q1.y);
    const double ang_err = std::abs(geoctrl::normalize_angle(end.theta - q1.theta));
    EXPECT_LE(pos_err, 1e-9) << "trial " << trial;
    EXPECT_LE(ang_err, 1e-9) << "trial " << trial;
  }

  // Far pairs are always turn-straight-turn.
  int far_checked = 0;
  while (far_checked < 200) {
    const PlanarPose q0 = random_pose(), q1 = random_pose();
    if (std::hypot(q1.x - q0.x, q1.y - q0.y) <= 4.0) continue;
    EXPECT_TRUE(is_csc(geoctrl::shortest_path(q0, q1).word))
        << "(" << q0.x << "," << q0.y << "," << q0.theta << ") -> (" << q1.x << "," << q1.y << ","
        << q1.theta << ")";
    ++far_checked;
  }

  // The discretized-control oracle must never beat the solver by more than
  // 1e-3. Its coarse grid can settle on a longer valid closure for a few
  // hard pairs, so the matching side is a count: on most pairs it should
  // land within 0.05 of the solver, which keeps the lower bound non-vacuous.
  int matched = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const PlanarPose q0 = random_pose(), q1 = random_pose();
    const double solver = geoctrl::shortest_path(q0, q1).length;
    const double oracle = oracle_shortest(q0, q1);
    ASSERT_TRUE(std::isfinite(oracle)) << "trial " << trial;
    EXPECT_GE(oracle, solver - 1e-3) << "trial " << trial;
    if (oracle <= solver + 0.05) ++matched;
  }
  EXPECT_GE(matched, 85);
}

// ---- criterion 6: elastica integration invariants --------------------------

TEST(Acceptance, C6ElasticaInvariants) {
  Reporter rep{6, "elastica energy, unit speed, angle identity, regimes"};
  const geoctrl::ElasticaParams cases[] = {
      {1.0, 2.0, 0.0}, {1.0, 0.0, 3.0}, {2.3, 1.1, 0.7}};
  for (const auto& p : cases) {
    const auto traj = geoctrl::integrate_extremal(p, 10.0, 10000);  // step 1e-3
    const double e0 = 0.5 * p.h2_0 * p.h2_0 - p.r * std::cos(p.beta0);
    for (const auto& s : traj) {
      EXPECT_NEAR(0.5 * s.h2 * s.h2 - p.r * std::cos(s.beta), e0, 1e-9);
      EXPECT_NEAR(std::hypot(std::cos(s.theta), std::sin(s.theta)), 1.0, 1e-10);
      EXPECT_NEAR(s.theta, s.beta - p.beta0, 1e-10);
    }
  }

  using geoctrl::ElasticaRegime;
  EXPECT_EQ(geoctrl::classify({1.0, 0.0, 0.0}), ElasticaRegime::Line);
  EXPECT_EQ(geoctrl::classify({1.0, kPi / 2.0, 0.0}), ElasticaRegime::Inflectional);
  EXPECT_EQ(geoctrl::classify({1.0, kPi, 0.0}), ElasticaRegime::CriticalSeparatrix);
  EXPECT_EQ(geoctrl::classify({1.0, 0.0, 3.0}), ElasticaRegime::NonInflectional);
  EXPECT_EQ(geoctrl::classify({0.0, 0.0, 1.0}), ElasticaRegime::CircleOrLine);
}

// ---- criterion 7: Heisenberg closed forms ----------------------------------

TEST(Acceptance, C7HeisenbergClosedForm) {
  Reporter rep{7, "Heisenberg exponential map and distance"};
  const geoctrl::HeisenbergPoint top = geoctrl::exp_map({0.0, 1.0, kTwoPi});
  EXPECT_NEAR(top.x, 0.0, 1e-10);
  EXPECT_NEAR(top.y, 0.0, 1e-10);
  EXPECT_NEAR(top.z, kTwoPi, 1e-10);

  std::mt19937 gen(11);
  std::uniform_real_distribution<double> mom(-10.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double h3 = mom(gen);
    if (h3 == 0.0) continue;
    EXPECT_DOUBLE_EQ(geoctrl::conjugate_time(h3), geoctrl::maxwell_time(h3));
  }

  for (int k = 0; k < 10000; ++k) {
    const double p = 0.01 + k * (kPi - 0.02) / 9999.0;
    EXPECT_NE(geoctrl::jacobian_factor(p), 0.0);
  }

  EXPECT_NEAR(geoctrl::solve_geodesic({3.0, 4.0, 0.0}).distance, 5.0, 1e-9);
  EXPECT_NEAR(geoctrl::solve_geodesic({0.0, 0.0, kTwoPi}).distance, kTwoPi, 1e-9);
  EXPECT_NEAR(geoctrl::solve_geodesic({1.0, 0.0, kPi / 4.0}).distance, kPi / 2.0, 1e-9);

  // Round trip through the optimality domain.
  std::uniform_real_distribution<double> ang(-kPi, kPi), mag(0.05, 3.0), frac(1e-3, 1.0 - 1e-3);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 1000; ++trial) {
    geoctrl::GeodesicParam g;
    g.theta0 = ang(gen);
    g.h3 = (coin(gen) ? 1.0 : -1.0) * mag(gen);
    g.t = frac(gen) * kTwoPi / std::abs(g.h3);
    const auto res = geoctrl::solve_geodesic(geoctrl::exp_map(g));
    ASSERT_EQ(res.minimizers.size(), 1u) << "trial " << trial;
    EXPECT_NEAR(res.distance, g.t, 1e-6) << "trial " << trial;
    EXPECT_NEAR(std::abs(std::remainder(res.minimizers[0].theta0 - g.theta0, kTwoPi)), 0.0, 1e-6)
        << "trial " << trial;
    EXPECT_NEAR(res.minimizers[0].h3, g.h3, 1e-6) << "trial " << trial;
  }

  // Continuity across the case boundaries, monotone under refinement.
  const double plane = geoctrl::solve_geodesic({1.0, 0.5, 0.0}).distance;
  const double axis = geoctrl::solve_geodesic({0.0, 0.0, 1.0}).distance;
  double prev_plane = std::numeric_limits<double>::infinity();
  double prev_axis = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 4; ++k) {
    const double eps = std::pow(10.0, -k);
    const double ep = std::abs(geoctrl::solve_geodesic({1.0, 0.5, eps}).distance - plane);
    const double ea = std::abs(geoctrl::solve_geodesic({eps, 0.0, 1.0}).distance - axis);
    EXPECT_LT(ep, prev_plane) << "k=" << k;
    EXPECT_LT(ea, prev_axis) << "k=" << k;
    prev_plane = ep;
    prev_axis = ea;
  }
}

// ---- criterion 8: CLI determinism ------------------------------------------

std::string run_cli_stdout(const std::string& args, int* exit_code) {
  const std::string cmd =
      "env -u GEOCTRL_FORMAT " + std::string(GEOCTRL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    *exit_code = -1;
    return {};
  }
  std::string out;
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

TEST(Acceptance, C8CliGoldenDeterminism) {
  Reporter rep{8, "CLI golden outputs byte-identical across runs"};
  const std::string golden = GEOCTRL_GOLDEN_DIR;
  const struct {
    const char* file;
    std::string args;
  } fixtures[] = {
      {"kalman.json", "kalman --A '[[0,1],[0,0]]' --B '[[0],[1]]'"},
      {"linearize.json", "linearize --system pendulum --x0 '[3.141592653589793,0]' --u0 '[0]'"},
      {"bracket.json", "bracket --system reeds-shepp --i 0 --j 1 --at '[0.4,-1.1,0.9]'"},
      {"larc.json", "larc --system rolling-sphere --depth 3 --seed 7"},
      {"involutive.json", "involutive --system foliation"},
      {"train.json", "train --x1 1 --x2 0 --samples 5"},
      {"dubins.json", "dubins --from 0 0 0 --to 4 0 1.5707963267948966 --samples 6"},
      {"elastica.json", "elastica --r 1 --beta0 2 --h20 0 --length 4 --steps 2000 --samples 9"},
      {"hb-exp.json", "hb-exp --theta0 0 --h3 1 --t 6.283185307179586 --samples 5"},
      {"hb-dist.json", "hb-dist --x 1 --y 0 --z 0.7853981633974483"},
  };
  for (const auto& fx : fixtures) {
    int code1 = -1, code2 = -1;
    const std::string out1 = run_cli_stdout(fx.args, &code1);
    const std::string out2 = run_cli_stdout(fx.args, &code2);
    EXPECT_EQ(code1, 0) << fx.args;
    EXPECT_EQ(code2, 0) << fx.args;
    EXPECT_EQ(out1, out2) << fx.file << ": two runs differ";

    std::ifstream in(golden + "/" + fx.file, std::ios::binary);
    ASSERT_TRUE(in.good()) << "missing golden " << fx.file;
    std::stringstream want;
    want << in.rdbuf();
    EXPECT_EQ(out1, want.str()) << fx.file << ": output drifted from the golden copy";
  }
}

}  // namespace
