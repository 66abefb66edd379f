#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "geoctrl/numeric.hpp"

namespace geoctrl {

// Sub-Riemannian geometry of the Heisenberg group: frame
//   f1 = dx - (y/2) dz,  f2 = dy + (x/2) dz
// on R^3 with the metric making (f1, f2) orthonormal. Unit-speed normal
// geodesics from the origin are parameterized by the initial covector angle
// theta0 and the vertical momentum h3; their horizontal projections are
// circles of curvature h3 (lines when h3 = 0) and the vertical coordinate
// accumulates the signed-area integral of the projection: along every
// geodesic z(t) = int_0^t (x y' - y x') ds, twice the swept sector area.

struct HeisenbergPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct GeodesicParam {
  double theta0 = 0.0;
  double h3 = 0.0;
  double t = 0.0;  // arclength; the geodesic is unit-speed
};

// Endpoint of the geodesic with parameters g. Closed form:
//   x + iy = t * sinc(h3 t / 2) * exp(i (theta0 + h3 t / 2))
//   z      = t^2 * (a - sin a) / a^2,  a = h3 t,
// with the removable singularities at h3 = 0 handled by the series-guarded
// helpers, so the map is smooth through zero.
inline HeisenbergPoint exp_map(const GeodesicParam& g) {
  if (!std::isfinite(g.theta0) || !std::isfinite(g.h3) || !std::isfinite(g.t)) {
    throw std::invalid_argument("exp_map: parameters must be finite");
  }
  if (g.t < 0.0) throw std::invalid_argument("exp_map: t must be >= 0");
  const double a = g.h3 * g.t;
  const double chord = g.t * sinc(0.5 * a);
  const double tau = g.theta0 + 0.5 * a;
  return {chord * std::cos(tau), chord * std::sin(tau), g.t * g.t * sin_defect(a)};
}

// phi(p) = (2p - sin 2p) cos p - (1 - cos 2p) sin p. The Jacobian of the
// exponential map at parameter time t = 2p/h3 vanishes exactly at the zeros
// of phi; phi < 0 throughout (0, pi), which is why the first conjugate time
// sits at p = pi and not before.
inline double jacobian_factor(double p) {
  if (!std::isfinite(p)) throw std::invalid_argument("jacobian_factor: p must be finite");
  return (2.0 * p - std::sin(2.0 * p)) * std::cos(p) - (1.0 - std::cos(2.0 * p)) * std::sin(p);
}

// First conjugate time along the geodesic with vertical momentum h3.
inline double conjugate_time(double h3) {
  if (!std::isfinite(h3)) throw std::invalid_argument("conjugate_time: h3 must be finite");
  if (h3 == 0.0) return std::numeric_limits<double>::infinity();
  return kTwoPi / std::abs(h3);
}

// First Maxwell time (another geodesic of equal length arrives). For this
// group it coincides with the conjugate time.
inline double maxwell_time(double h3) {
  if (!std::isfinite(h3)) throw std::invalid_argument("maxwell_time: h3 must be finite");
  if (h3 == 0.0) return std::numeric_limits<double>::infinity();
  return kTwoPi / std::abs(h3);
}

// mu(p) = (2p - sin 2p) / (4 sin^2 p) = z / (x^2 + y^2) along geodesics,
// strictly increasing from 0+ to +inf on (0, pi). Written via the stable
// helpers: mu(p) = sin_defect(2p) / sinc(p)^2.
inline double mu_ratio(double p) {
  const double s = sinc(p);
  return sin_defect(2.0 * p) / (s * s);
}

namespace detail {

inline constexpr double kMuLo = 1e-12;
inline constexpr double kMuHi = kPi - 1e-12;

// Invert mu on (0, pi). Outside the bracketed range the asymptotics
// mu ~ p/3 (p -> 0) and mu ~ pi / (2 (pi - p)^2) (p -> pi) take over, which
// keeps the inverse continuous onto the z = 0 plane and the z-axis.
inline double invert_mu(double target) {
  if (target <= mu_ratio(kMuLo)) return 3.0 * target;
  if (target >= mu_ratio(kMuHi)) return kPi - std::sqrt(0.5 * kPi / target);
  double lo = kMuLo, hi = kMuHi;
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    (mu_ratio(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

struct DistanceResult {
  double distance = 0.0;
  std::vector<GeodesicParam> minimizers;
  // On the z-axis a whole circle of geodesics is optimal; `minimizers` then
  // holds the theta0 = 0 representative.
  bool axis_family = false;
};

// Carnot-Caratheodory distance from the origin, with the minimizing geodesic
// parameters. Case split:
//   z = 0           -> straight line, d = sqrt(x^2 + y^2)
//   on the z-axis   -> d = sqrt(2 pi |z|), one-parameter family
//   otherwise       -> solve mu(p) = |z| / (x^2 + y^2), d = (p / sin p) r
inline DistanceResult solve_geodesic(const HeisenbergPoint& q) {
  if (!std::isfinite(q.x) || !std::isfinite(q.y) || !std::isfinite(q.z)) {
    throw std::invalid_argument("solve_geodesic: point must be finite");
  }
  const double r = std::hypot(q.x, q.y);

  DistanceResult res;
  if (r == 0.0 && q.z == 0.0) return res;  // the origin itself

  if (q.z == 0.0) {
    res.distance = r;
    res.minimizers.push_back({std::atan2(q.y, q.x), 0.0, r});
    return res;
  }

  const double sz = q.z > 0.0 ? 1.0 : -1.0;
  if (r == 0.0) {
    const double d = std::sqrt(kTwoPi * std::abs(q.z));
    res.distance = d;
    res.minimizers.push_back({0.0, sz * kTwoPi / d, d});
    res.axis_family = true;
    return res;
  }

  const double p = detail::invert_mu(std::abs(q.z) / (r * r));
  const double d = r / sinc(p);
  res.distance = d;
  res.minimizers.push_back(
      {normalize_angle(std::atan2(q.y, q.x) - sz * p), 2.0 * std::sin(p) * sz / r, d});
  return res;
}

}  // namespace geoctrl
