#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "geoctrl/numeric.hpp"

namespace geoctrl {

// Planar elastic curves via their pendulum reduction. Extremals satisfy
//   xdot = cos th, ydot = sin th, thdot = h2, betadot = h2, h2dot = -r sin(beta)
// with th = beta - beta0 and conserved E = h2^2/2 - r cos(beta).
// No elliptic functions anywhere; everything is integrated numerically.

struct ElasticaParams {
  double r = 1.0;      // pendulum stiffness |lambda_1| >= 0
  double beta0 = 0.0;  // initial pendulum angle
  double h2_0 = 0.0;   // initial pendulum momentum
};

enum class ElasticaRegime {
  Line,                // E = -r: pendulum resting at the bottom
  Inflectional,        // -r < E < r: oscillation, curvature changes sign
  CriticalSeparatrix,  // E = r: the borderline solitary arc
  NonInflectional,     // E > r: full rotations, curvature keeps its sign
  CircleOrLine,        // r = 0: constant curvature
};

inline const char* regime_name(ElasticaRegime m) {
  switch (m) {
    case ElasticaRegime::Line: return "line";
    case ElasticaRegime::Inflectional: return "inflectional";
    case ElasticaRegime::CriticalSeparatrix: return "critical-separatrix";
    case ElasticaRegime::NonInflectional: return "non-inflectional";
    case ElasticaRegime::CircleOrLine: return "circle-or-line";
  }
  return "?";
}

inline void check_params(const ElasticaParams& p, const char* who) {
  if (!std::isfinite(p.r) || !std::isfinite(p.beta0) || !std::isfinite(p.h2_0)) {
    throw std::invalid_argument(std::string(who) + ": parameters must be finite");
  }
  if (p.r < 0.0) throw std::invalid_argument(std::string(who) + ": r must be >= 0");
}

inline double pendulum_energy(const ElasticaParams& p) {
  return 0.5 * p.h2_0 * p.h2_0 - p.r * std::cos(p.beta0);
}

inline ElasticaRegime classify(const ElasticaParams& p) {
  check_params(p, "classify");
  const double tol = 1e-12 * std::max(1.0, p.r);
  if (p.r <= 1e-12) return ElasticaRegime::CircleOrLine;
  const double e = pendulum_energy(p);
  if (std::abs(e + p.r) <= tol) return ElasticaRegime::Line;
  if (std::abs(e - p.r) <= tol) return ElasticaRegime::CriticalSeparatrix;
  return e < p.r ? ElasticaRegime::Inflectional : ElasticaRegime::NonInflectional;
}

struct ElasticaSample {
  double s = 0.0;  // arclength
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  // unwrapped tangent angle
  double beta = 0.0;
  double h2 = 0.0;
};

// RK4 with fixed step length/steps on (x, y, th, beta, h2); returns steps + 1
// samples starting from the origin with th(0) = 0.
inline std::vector<ElasticaSample> integrate_extremal(const ElasticaParams& p, double length,
                                                      int steps) {
  check_params(p, "integrate_extremal");
  if (!(length > 0.0)) throw std::invalid_argument("integrate_extremal: length must be positive");
  if (steps < 1) throw std::invalid_argument("integrate_extremal: steps must be >= 1");

  const double r = p.r;
  auto rhs = [r](const Eigen::VectorXd& y) {
    Eigen::VectorXd f(5);
    f(0) = std::cos(y(2));
    f(1) = std::sin(y(2));
    f(2) = y(4);
    f(3) = y(4);
    f(4) = -r * std::sin(y(3));
    return f;
  };

  Eigen::VectorXd y(5);
  y << 0.0, 0.0, 0.0, p.beta0, p.h2_0;
  const double h = length / steps;
  std::vector<ElasticaSample> out;
  out.reserve(static_cast<size_t>(steps) + 1);
  auto push = [&out](double s, const Eigen::VectorXd& y5) {
    out.push_back({s, y5(0), y5(1), y5(2), y5(3), y5(4)});
  };
  push(0.0, y);
  for (int i = 1; i <= steps; ++i) {
    const Eigen::VectorXd k1 = rhs(y);
    const Eigen::VectorXd k2 = rhs(y + 0.5 * h * k1);
    const Eigen::VectorXd k3 = rhs(y + 0.5 * h * k2);
    const Eigen::VectorXd k4 = rhs(y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    push(h * i, y);
  }
  return out;
}

// The abnormal extremal: the straight line, traversed at unit speed.
inline std::vector<ElasticaSample> abnormal_extremal(double length, int n_samples) {
  if (!(length > 0.0)) throw std::invalid_argument("abnormal_extremal: length must be positive");
  if (n_samples < 2) throw std::invalid_argument("abnormal_extremal: need at least 2 samples");
  std::vector<ElasticaSample> out;
  out.reserve(static_cast<size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const double s = length * i / (n_samples - 1);
    out.push_back({s, s, 0.0, 0.0, 0.0, 0.0});
  }
  return out;
}

// Bending energy (1/2) int h2^2 ds by the trapezoid rule over the samples.
inline double elastic_energy(const std::vector<ElasticaSample>& samples) {
  if (samples.size() < 2) throw std::invalid_argument("elastic_energy: need at least 2 samples");
  double acc = 0.0;
  for (size_t i = 1; i < samples.size(); ++i) {
    const double ds = samples[i].s - samples[i - 1].s;
    if (!(ds >= 0.0)) throw std::invalid_argument("elastic_energy: samples must be s-ordered");
    acc += 0.5 * ds * (0.5 * samples[i].h2 * samples[i].h2 +
                       0.5 * samples[i - 1].h2 * samples[i - 1].h2);
  }
  return acc;
}

}  // namespace geoctrl
