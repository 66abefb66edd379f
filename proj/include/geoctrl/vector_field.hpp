#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <utility>

#include "geoctrl/numeric.hpp"

namespace geoctrl {

// A smooth vector field on a chart of R^n. `jac` is optional; when absent,
// consumers fall back to central finite differences.
struct VectorFieldSpec {
  int dim = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> eval;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jac;

  bool has_jacobian() const { return static_cast<bool>(jac); }
};

inline void check_point(const VectorFieldSpec& f, const Eigen::VectorXd& q, const char* who) {
  if (!f.eval) throw std::invalid_argument(std::string(who) + ": field has no eval");
  if (q.size() != f.dim) throw std::invalid_argument(std::string(who) + ": point dimension mismatch");
}

// Jacobian by central differences, step scaled per coordinate.
inline Eigen::MatrixXd numeric_jacobian(const VectorFieldSpec& f, const Eigen::VectorXd& q) {
  check_point(f, q, "numeric_jacobian");
  const int n = f.dim;
  Eigen::MatrixXd J(n, n);
  Eigen::VectorXd qp = q, qm = q;
  for (int j = 0; j < n; ++j) {
    const double h = fd_step(q(j));
    qp(j) = q(j) + h;
    qm(j) = q(j) - h;
    J.col(j) = (f.eval(qp) - f.eval(qm)) / (qp(j) - qm(j));
    qp(j) = q(j);
    qm(j) = q(j);
  }
  return J;
}

inline Eigen::MatrixXd field_jacobian(const VectorFieldSpec& f, const Eigen::VectorXd& q) {
  return f.jac ? f.jac(q) : numeric_jacobian(f, q);
}

}  // namespace geoctrl
