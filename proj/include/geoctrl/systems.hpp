#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "geoctrl/linear_control.hpp"
#include "geoctrl/vector_field.hpp"

// Built-in frames and control systems the tests and the CLI draw from.
namespace geoctrl::systems {

struct CatalogEntry {
  std::string key;
  std::vector<VectorFieldSpec> fields;
  std::vector<std::string> names;
  Eigen::VectorXd default_point;
};

// Heisenberg frame on R^3: f1 = dx - (y/2) dz, f2 = dy + (x/2) dz.
inline std::vector<VectorFieldSpec> heisenberg_frame() {
  VectorFieldSpec f1{3,
                     [](const Eigen::VectorXd& q) {
                       return Eigen::Vector3d(1.0, 0.0, -0.5 * q(1));
                     },
                     [](const Eigen::VectorXd&) {
                       Eigen::Matrix3d j = Eigen::Matrix3d::Zero();
                       j(2, 1) = -0.5;
                       return Eigen::MatrixXd(j);
                     }};
  VectorFieldSpec f2{3,
                     [](const Eigen::VectorXd& q) {
                       return Eigen::Vector3d(0.0, 1.0, 0.5 * q(0));
                     },
                     [](const Eigen::VectorXd&) {
                       Eigen::Matrix3d j = Eigen::Matrix3d::Zero();
                       j(2, 0) = 0.5;
                       return Eigen::MatrixXd(j);
                     }};
  return {f1, f2};
}

// Unit forward motion of a planar heading frame: (cos th, sin th, 0).
inline VectorFieldSpec planar_forward() {
  return {3,
          [](const Eigen::VectorXd& q) {
            return Eigen::Vector3d(std::cos(q(2)), std::sin(q(2)), 0.0);
          },
          [](const Eigen::VectorXd& q) {
            Eigen::Matrix3d j = Eigen::Matrix3d::Zero();
            j(0, 2) = -std::sin(q(2));
            j(1, 2) = std::cos(q(2));
            return Eigen::MatrixXd(j);
          }};
}

// Pure steering: (0, 0, 1).
inline VectorFieldSpec planar_steering() {
  return {3,
          [](const Eigen::VectorXd&) { return Eigen::Vector3d(0.0, 0.0, 1.0); },
          [](const Eigen::VectorXd&) { return Eigen::MatrixXd(Eigen::Matrix3d::Zero()); }};
}

// Engel-type frame on R^4.
inline std::vector<VectorFieldSpec> engel_frame() {
  VectorFieldSpec x1{4,
                     [](const Eigen::VectorXd& q) {
                       Eigen::Vector4d v(1.0, 0.0, -0.5 * q(1), -0.5 * (q(0) * q(0) + q(1) * q(1)));
                       return Eigen::VectorXd(v);
                     },
                     [](const Eigen::VectorXd& q) {
                       Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
                       j(2, 1) = -0.5;
                       j(3, 0) = -q(0);
                       j(3, 1) = -q(1);
                       return Eigen::MatrixXd(j);
                     }};
  VectorFieldSpec x2{4,
                     [](const Eigen::VectorXd& q) {
                       return Eigen::VectorXd(Eigen::Vector4d(0.0, 1.0, 0.5 * q(0), 0.0));
                     },
                     [](const Eigen::VectorXd&) {
                       Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
                       j(2, 0) = 0.5;
                       return Eigen::MatrixXd(j);
                     }};
  return {x1, x2};
}

// Sphere rolling on the plane without slipping or twisting. State is
// (x, y, R) with R in SO(3) stored row-major, so the chart lives in R^11.
// Controls move the contact point; the frame is the two unit directions.
inline std::vector<VectorFieldSpec> rolling_sphere_frame() {
  // Rdot = R * Omega(u, v), Omega = [[0,0,-u],[0,0,-v],[u,v,0]].
  auto make = [](int axis) {
    VectorFieldSpec f;
    f.dim = 11;
    f.eval = [axis](const Eigen::VectorXd& q) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(11);
      v(axis) = 1.0;
      auto r = [&q](int i, int j) { return q(2 + 3 * i + j); };
      for (int i = 0; i < 3; ++i) {
        if (axis == 0) {
          v(2 + 3 * i + 0) = r(i, 2);
          v(2 + 3 * i + 2) = -r(i, 0);
        } else {
          v(2 + 3 * i + 1) = r(i, 2);
          v(2 + 3 * i + 2) = -r(i, 1);
        }
      }
      return v;
    };
    return f;  // linear in q, so central differences recover the Jacobian exactly
  };
  return {make(0), make(1)};
}

// A frame that *is* involutive: translations with an x-speed that depends on y.
// [f1, f2] = -(2y, 0, 0), a multiple of f1 at every point.
inline std::vector<VectorFieldSpec> foliation_frame() {
  VectorFieldSpec f1{3,
                     [](const Eigen::VectorXd& q) {
                       return Eigen::Vector3d(1.0 + q(1) * q(1), 0.0, 0.0);
                     },
                     [](const Eigen::VectorXd& q) {
                       Eigen::Matrix3d j = Eigen::Matrix3d::Zero();
                       j(0, 1) = 2.0 * q(1);
                       return Eigen::MatrixXd(j);
                     }};
  VectorFieldSpec f2{3,
                     [](const Eigen::VectorXd&) { return Eigen::Vector3d(0.0, 1.0, 0.0); },
                     [](const Eigen::VectorXd&) { return Eigen::MatrixXd(Eigen::Matrix3d::Zero()); }};
  return {f1, f2};
}

inline Eigen::VectorXd identity_rotation_point() {
  Eigen::VectorXd q = Eigen::VectorXd::Zero(11);
  q(2) = q(6) = q(10) = 1.0;  // R = I, row-major
  return q;
}

inline CatalogEntry catalog(const std::string& key) {
  if (key == "heisenberg") {
    return {key, heisenberg_frame(), {"f1", "f2"}, Eigen::VectorXd::Zero(3)};
  }
  if (key == "reeds-shepp") {
    return {key, {planar_forward(), planar_steering()}, {"f1", "f2"}, Eigen::VectorXd::Zero(3)};
  }
  if (key == "dubins") {
    // Same frame; the forward field is the drift here, hence the f0 name.
    return {key, {planar_forward(), planar_steering()}, {"f0", "f1"}, Eigen::VectorXd::Zero(3)};
  }
  if (key == "se2") {
    return {key, {planar_forward(), planar_steering()}, {"f1", "f2"}, Eigen::VectorXd::Zero(3)};
  }
  if (key == "engel") {
    return {key, engel_frame(), {"x1", "x2"}, Eigen::VectorXd::Zero(4)};
  }
  if (key == "rolling-sphere") {
    return {key, rolling_sphere_frame(), {"f1", "f2"}, identity_rotation_point()};
  }
  if (key == "foliation") {
    return {key, foliation_frame(), {"f1", "f2"}, Eigen::VectorXd::Zero(3)};
  }
  throw std::invalid_argument("unknown system: " + key);
}

inline std::vector<std::string> catalog_keys() {
  return {"heisenberg", "reeds-shepp", "dubins", "se2", "engel", "rolling-sphere", "foliation"};
}

// Controlled systems for the linearization demos.
struct ControlledEntry {
  std::string key;
  ControlledDynamics f;
  int state_dim = 0;
  int input_dim = 0;
};

inline ControlledEntry controlled(const std::string& key) {
  if (key == "pendulum") {
    // th_dd = -sin(th) + u, gravity and rod normalized away
    return {key,
            [](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
              return Eigen::VectorXd(Eigen::Vector2d(x(1), -std::sin(x(0)) + u(0)));
            },
            2, 1};
  }
  if (key == "train") {
    return {key,
            [](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
              return Eigen::VectorXd(Eigen::Vector2d(x(1), u(0)));
            },
            2, 1};
  }
  if (key == "oscillator") {
    return {key,
            [](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
              return Eigen::VectorXd(Eigen::Vector2d(x(1), -x(0) + u(0)));
            },
            2, 1};
  }
  throw std::invalid_argument("unknown controlled system: " + key);
}

inline std::vector<std::string> controlled_keys() { return {"pendulum", "train", "oscillator"}; }

}  // namespace geoctrl::systems
