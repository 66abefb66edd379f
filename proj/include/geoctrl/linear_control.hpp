#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cstdio>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "geoctrl/numeric.hpp"

namespace geoctrl {

// xdot = A x + B u, A n-by-n, B n-by-k.
struct LinearSystem {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;

  LinearSystem(Eigen::MatrixXd A_, Eigen::MatrixXd B_) : A(std::move(A_)), B(std::move(B_)) {
    if (A.rows() != A.cols()) throw std::invalid_argument("LinearSystem: A must be square");
    if (B.rows() != A.rows()) throw std::invalid_argument("LinearSystem: B must have n rows");
    if (A.rows() < 1 || B.cols() < 1) throw std::invalid_argument("LinearSystem: need n, k >= 1");
    if (!A.allFinite() || !B.allFinite()) {
      throw std::invalid_argument("LinearSystem: entries must be finite");
    }
  }

  int state_dim() const { return static_cast<int>(A.rows()); }
  int input_dim() const { return static_cast<int>(B.cols()); }
};

inline Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a, double t) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix_exponential: matrix must be square");
  if (!a.allFinite()) throw std::invalid_argument("matrix_exponential: entries must be finite");
  return (a * t).exp();  // scaling-and-squaring, Pade(13)
}

// One constant-control interval.
struct ControlPiece {
  double duration = 0.0;
  Eigen::VectorXd value;
};

// Exact propagation through piecewise-constant input. Each piece is one
// augmented exponential
//   exp([[A, B u], [0, 0]] dt) = [[e^{A dt}, int_0^dt e^{A s} ds B u], [0, 1]],
// so there is no time-stepping error.
inline Eigen::VectorXd propagate(const LinearSystem& sys, const Eigen::VectorXd& x0,
                                 std::span<const ControlPiece> control) {
  const int n = sys.state_dim();
  if (x0.size() != n) throw std::invalid_argument("propagate: x0 dimension mismatch");
  Eigen::VectorXd x = x0;
  for (const auto& piece : control) {
    if (piece.value.size() != sys.input_dim()) {
      throw std::invalid_argument("propagate: control value dimension mismatch");
    }
    if (!(piece.duration >= 0.0)) {
      throw std::invalid_argument("propagate: piece duration must be >= 0");
    }
    if (!piece.value.allFinite()) throw std::invalid_argument("propagate: control value not finite");
    if (piece.duration == 0.0) continue;
    Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(n + 1, n + 1);
    aug.topLeftCorner(n, n) = sys.A;
    aug.topRightCorner(n, 1) = sys.B * piece.value;
    const Eigen::MatrixXd e = matrix_exponential(aug, piece.duration);
    x = e.topLeftCorner(n, n) * x + e.topRightCorner(n, 1);
  }
  return x;
}

struct ControllabilityReport {
  int rank = 0;
  bool controllable = false;
  Eigen::VectorXd singular_values;  // of [B, AB, ..., A^{n-1}B], descending
};

inline ControllabilityReport kalman_test(const LinearSystem& sys) {
  const int n = sys.state_dim();
  const int k = sys.input_dim();
  Eigen::MatrixXd kmat(n, static_cast<Eigen::Index>(n) * k);
  Eigen::MatrixXd power = sys.B;
  for (int i = 0; i < n; ++i) {
    kmat.middleCols(static_cast<Eigen::Index>(i) * k, k) = power;
    if (i + 1 < n) power = sys.A * power;
  }
  ControllabilityReport rep;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(kmat);
  rep.singular_values = svd.singularValues();
  rep.rank = numeric_rank(rep.singular_values, kmat.rows(), kmat.cols());
  rep.controllable = (rep.rank == n);
  return rep;
}

// Rank of W(T) = int_0^T e^{-At} B B^T e^{-A^T t} dt by composite Simpson.
// Kept quadrature-based on purpose: it cross-checks kalman_test through an
// entirely different route.
inline int gramian_rank(const LinearSystem& sys, double horizon, int panels = 1024) {
  if (!(horizon > 0.0)) throw std::invalid_argument("gramian_rank: horizon must be positive");
  if (panels < 1) throw std::invalid_argument("gramian_rank: panels must be >= 1");
  const int n = sys.state_dim();
  auto integrand = [&sys](double t) -> Eigen::MatrixXd {
    const Eigen::MatrixXd eb = matrix_exponential(sys.A, -t) * sys.B;
    return eb * eb.transpose();
  };
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  const double h = horizon / panels;
  for (int i = 0; i < panels; ++i) {
    const double a = i * h;
    w += h / 6.0 * (integrand(a) + 4.0 * integrand(a + 0.5 * h) + integrand(a + h));
  }
  return numeric_rank(w);
}

using ControlledDynamics =
    std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)>;

inline constexpr double kEquilibriumTol = 1e-8;

// Jacobian linearization at an equilibrium (x0, u0). Refuses points that are
// not equilibria: the linearization theorems are stated there.
inline LinearSystem linearize(const ControlledDynamics& f, const Eigen::VectorXd& x0,
                              const Eigen::VectorXd& u0) {
  if (!f) throw std::invalid_argument("linearize: dynamics not set");
  const Eigen::VectorXd f0 = f(x0, u0);
  const int n = static_cast<int>(x0.size());
  if (f0.size() != n) throw std::invalid_argument("linearize: dynamics dimension mismatch");
  const double residual = f0.lpNorm<Eigen::Infinity>();
  if (!(residual <= kEquilibriumTol)) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", residual);
    throw std::domain_error(std::string("linearize: (x0, u0) is not an equilibrium, |f|_inf = ") +
                            buf);
  }

  Eigen::MatrixXd a(n, n);
  Eigen::VectorXd xp = x0, xm = x0;
  for (int j = 0; j < n; ++j) {
    const double h = fd_step(x0(j));
    xp(j) = x0(j) + h;
    xm(j) = x0(j) - h;
    a.col(j) = (f(xp, u0) - f(xm, u0)) / (xp(j) - xm(j));
    xp(j) = x0(j);
    xm(j) = x0(j);
  }
  const int k = static_cast<int>(u0.size());
  Eigen::MatrixXd b(n, k);
  Eigen::VectorXd up = u0, um = u0;
  for (int j = 0; j < k; ++j) {
    const double h = fd_step(u0(j));
    up(j) = u0(j) + h;
    um(j) = u0(j) - h;
    b.col(j) = (f(x0, up) - f(x0, um)) / (up(j) - um(j));
    up(j) = u0(j);
    um(j) = u0(j);
  }
  return LinearSystem(std::move(a), std::move(b));
}

}  // namespace geoctrl
