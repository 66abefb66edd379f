#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace geoctrl {

// Time-optimal control of xdot1 = x2, xdot2 = u, |u| <= 1, target the origin.
// The optimal law is bang-bang with at most one switch, on the curve
//   Gamma: x1 = x2^2/2 (x2 <= 0)  and  x1 = -x2^2/2 (x2 >= 0).

struct DIState {
  double x1 = 0.0;
  double x2 = 0.0;
};

struct DIPlan {
  int u_first = 0;       // -1, 0 (already at origin), +1
  double t_switch = 0.0; // time on the first arc; equals t_total when no switch remains
  double t_total = 0.0;
};

inline double switching_curve(double x2) { return x2 <= 0.0 ? 0.5 * x2 * x2 : -0.5 * x2 * x2; }

namespace detail {

inline constexpr double kOriginTol = 1e-12;

inline bool di_at_origin(const DIState& s) {
  return std::abs(s.x1) <= kOriginTol && std::abs(s.x2) <= kOriginTol;
}

// |x1 - Gamma(x2)| <= 1e-12 * max(1, x2^2) counts as on the curve.
inline bool di_on_curve(const DIState& s) {
  return std::abs(s.x1 - switching_curve(s.x2)) <= 1e-12 * std::max(1.0, s.x2 * s.x2);
}

}  // namespace detail

// Optimal feedback u*(x): +1 below/on the lower branch, -1 above/on the upper
// branch, 0 exactly at the origin.
inline int di_feedback(const DIState& s) {
  if (!std::isfinite(s.x1) || !std::isfinite(s.x2)) {
    throw std::invalid_argument("di_feedback: state must be finite");
  }
  if (detail::di_at_origin(s)) return 0;
  if (detail::di_on_curve(s)) return s.x2 <= 0.0 ? +1 : -1;
  return s.x1 < switching_curve(s.x2) ? +1 : -1;
}

// Closed-form minimum time and switch time.
// Above Gamma: u = -1 first, t_s = x2 + sqrt(x2^2/2 + x1), T = x2 + 2 sqrt(x2^2/2 + x1).
// Below is the central-symmetric image (x1, x2) -> (-x1, -x2).
inline DIPlan di_min_time(const DIState& s) {
  if (!std::isfinite(s.x1) || !std::isfinite(s.x2)) {
    throw std::invalid_argument("di_min_time: state must be finite");
  }
  if (detail::di_at_origin(s)) return {0, 0.0, 0.0};
  if (detail::di_on_curve(s)) {
    const double t = std::abs(s.x2);
    return {s.x2 <= 0.0 ? +1 : -1, t, t};
  }
  if (s.x1 > switching_curve(s.x2)) {
    const double root = std::sqrt(std::max(0.0, 0.5 * s.x2 * s.x2 + s.x1));
    return {-1, s.x2 + root, s.x2 + 2.0 * root};
  }
  const double root = std::sqrt(std::max(0.0, 0.5 * s.x2 * s.x2 - s.x1));
  return {+1, -s.x2 + root, -s.x2 + 2.0 * root};
}

struct DISample {
  double t = 0.0;
  DIState state;
  int u = 0;
};

// Closed-form playback of a plan from s at n_samples uniform times in [0, T].
inline std::vector<DISample> di_simulate(const DIState& s, const DIPlan& plan, int n_samples) {
  if (n_samples < 2) throw std::invalid_argument("di_simulate: need at least 2 samples");
  auto arc = [](const DIState& from, double u, double t) {
    return DIState{from.x1 + from.x2 * t + 0.5 * u * t * t, from.x2 + u * t};
  };
  const double u1 = static_cast<double>(plan.u_first);
  const double u2 = -u1;
  const DIState at_switch = arc(s, u1, plan.t_switch);
  std::vector<DISample> out;
  out.reserve(static_cast<size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const double t = plan.t_total * i / (n_samples - 1);
    DISample smp;
    smp.t = t;
    if (t <= plan.t_switch) {
      smp.state = arc(s, u1, t);
      smp.u = plan.u_first;
    } else {
      smp.state = arc(at_switch, u2, t - plan.t_switch);
      smp.u = -plan.u_first;
    }
    out.push_back(smp);
  }
  return out;
}

}  // namespace geoctrl
