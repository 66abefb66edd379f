#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace geoctrl {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Wrap into (-pi, pi].
inline double normalize_angle(double a) {
  double v = std::remainder(a, kTwoPi);
  if (v <= -kPi) v += kTwoPi;
  return v;
}

// Wrap into [0, 2*pi).
inline double mod_2pi(double a) {
  double v = std::fmod(a, kTwoPi);
  if (v < 0.0) v += kTwoPi;
  return v;
}

// Rank from a descending singular value list, threshold max(rows, cols) * eps * sigma_max.
inline int numeric_rank(const Eigen::VectorXd& singular_values, Eigen::Index rows,
                        Eigen::Index cols) {
  if (singular_values.size() == 0) return 0;
  const double sigma_max = singular_values(0);
  const double thresh =
      static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon() * sigma_max;
  int r = 0;
  for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
    if (singular_values(i) > thresh) ++r;
  }
  return r;
}

inline int numeric_rank(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return numeric_rank(svd.singularValues(), m.rows(), m.cols());
}

// Central-difference step scaled to the coordinate magnitude.
inline double fd_step(double coord) {
  static const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
  return h0 * std::max(1.0, std::abs(coord));
}

// sin(u)/u, continuous through u = 0.
inline double sinc(double u) {
  if (std::abs(u) < 1e-2) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 * (1.0 - u2 / 20.0 * (1.0 - u2 / 42.0));
  }
  return std::sin(u) / u;
}

// (a - sin a) / a^2; the direct form cancels catastrophically near a = 0,
// so a truncated series takes over below |a| = 1e-2.
inline double sin_defect(double a) {
  if (std::abs(a) < 1e-2) {
    const double a2 = a * a;
    return a / 6.0 * (1.0 - a2 / 20.0 * (1.0 - a2 / 42.0 * (1.0 - a2 / 72.0)));
  }
  return (a - std::sin(a)) / (a * a);
}

// Classical RK4 for an autonomous field, fixed step count, endpoint only.
inline Eigen::VectorXd flow_rk4(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                                const Eigen::VectorXd& q0, double time, int steps) {
  if (steps < 1) throw std::invalid_argument("flow_rk4: steps must be >= 1");
  const double h = time / steps;
  Eigen::VectorXd q = q0;
  for (int i = 0; i < steps; ++i) {
    const Eigen::VectorXd k1 = f(q);
    const Eigen::VectorXd k2 = f(q + 0.5 * h * k1);
    const Eigen::VectorXd k3 = f(q + 0.5 * h * k2);
    const Eigen::VectorXd k4 = f(q + h * k3);
    q += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return q;
}

}  // namespace geoctrl
