#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "geoctrl/numeric.hpp"

namespace geoctrl {

struct PlanarPose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  // kept in (-pi, pi]

  PlanarPose() = default;
  PlanarPose(double x_, double y_, double theta_) : x(x_), y(y_), theta(normalize_angle(theta_)) {}
};

// Shortest paths of a unit-speed car with |curvature| <= 1 (both turn radii 1).
// Every optimal path is one of six words; CCC words carry their middle arc in
// [pi, 2*pi).
enum class DubinsWord { LSL, RSR, LSR, RSL, LRL, RLR };

inline const char* word_name(DubinsWord w) {
  switch (w) {
    case DubinsWord::LSL: return "LSL";
    case DubinsWord::RSR: return "RSR";
    case DubinsWord::LSR: return "LSR";
    case DubinsWord::RSL: return "RSL";
    case DubinsWord::LRL: return "LRL";
    case DubinsWord::RLR: return "RLR";
  }
  return "?";
}

// Turn direction of each segment: +1 left arc, -1 right arc, 0 straight.
inline std::array<int, 3> word_signs(DubinsWord w) {
  switch (w) {
    case DubinsWord::LSL: return {+1, 0, +1};
    case DubinsWord::RSR: return {-1, 0, -1};
    case DubinsWord::LSR: return {+1, 0, -1};
    case DubinsWord::RSL: return {-1, 0, +1};
    case DubinsWord::LRL: return {+1, -1, +1};
    case DubinsWord::RLR: return {-1, +1, -1};
  }
  return {0, 0, 0};
}

struct DubinsPath {
  DubinsWord word = DubinsWord::LSL;
  std::array<double, 3> seg = {0.0, 0.0, 0.0};  // lengths; arcs are also angles (radius 1)
  double length = 0.0;
};

namespace detail {

// Discriminants that should be >= 0 can dip below by roundoff at tangency.
inline constexpr double kDiscSlop = 1e-9;

using SegParams = std::optional<std::array<double, 3>>;

// The six word constructions in the reduced frame: start (0,0,alpha),
// goal (d,0,beta). L/R pairs are written as exact mirror images of each
// other (alpha, beta) -> (-alpha, -beta) so mirrored queries match to the ulp.

inline SegParams word_lsl(double d, double alpha, double beta) {
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);
  const double tmp = 2.0 + d * d - 2.0 * (ca * cb + sa * sb - d * (sa - sb));
  if (tmp < -kDiscSlop) return std::nullopt;
  const double theta = std::atan2(cb - ca, d + sa - sb);
  const double p = std::sqrt(std::max(tmp, 0.0));
  return std::array<double, 3>{mod_2pi(-alpha + theta), p, mod_2pi(beta - theta)};
}

inline SegParams word_rsr(double d, double alpha, double beta) {
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);
  const double tmp = 2.0 + d * d - 2.0 * (ca * cb + sa * sb - d * (sb - sa));
  if (tmp < -kDiscSlop) return std::nullopt;
  const double theta = std::atan2(ca - cb, d - sa + sb);
  const double p = std::sqrt(std::max(tmp, 0.0));
  return std::array<double, 3>{mod_2pi(alpha - theta), p, mod_2pi(-beta + theta)};
}

inline SegParams word_lsr(double d, double alpha, double beta) {
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);
  const double tmp = -2.0 + d * d + 2.0 * (ca * cb + sa * sb + d * (sa + sb));
  if (tmp < -kDiscSlop) return std::nullopt;
  const double p = std::sqrt(std::max(tmp, 0.0));
  const double theta = std::atan2(-ca - cb, d + sa + sb) - std::atan2(-2.0, p);
  return std::array<double, 3>{mod_2pi(-alpha + theta), p, mod_2pi(-beta + theta)};
}

inline SegParams word_rsl(double d, double alpha, double beta) {
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);
  const double tmp = -2.0 + d * d + 2.0 * (ca * cb + sa * sb - d * (sa + sb));
  if (tmp < -kDiscSlop) return std::nullopt;
  const double p = std::sqrt(std::max(tmp, 0.0));
  const double theta = std::atan2(ca + cb, d - sa - sb) - std::atan2(2.0, p);
  return std::array<double, 3>{mod_2pi(alpha - theta), p, mod_2pi(beta - theta)};
}

inline SegParams word_rlr(double d, double alpha, double beta) {
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);
  double tmp = 0.125 * (6.0 - d * d + 2.0 * (ca * cb + sa * sb + d * (sa - sb)));
  if (tmp >= 1.0 || tmp < -1.0 - 1e-12) return std::nullopt;
  tmp = std::max(tmp, -1.0);
  const double p = kTwoPi - std::acos(tmp);  // middle arc in [pi, 2*pi)
  const double theta = std::atan2(ca - cb, d - sa + sb);
  const double t = mod_2pi(alpha - theta + 0.5 * p);
  return std::array<double, 3>{t, p, mod_2pi(alpha - beta - t + p)};
}

inline SegParams word_lrl(double d, double alpha, double beta) {
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);
  double tmp = 0.125 * (6.0 - d * d + 2.0 * (ca * cb + sa * sb - d * (sa - sb)));
  if (tmp >= 1.0 || tmp < -1.0 - 1e-12) return std::nullopt;
  tmp = std::max(tmp, -1.0);
  const double p = kTwoPi - std::acos(tmp);
  const double theta = std::atan2(-ca + cb, d + sa - sb);
  const double t = mod_2pi(-alpha + theta + 0.5 * p);
  return std::array<double, 3>{t, p, mod_2pi(beta - alpha - t + p)};
}

inline SegParams word_params(DubinsWord w, double d, double alpha, double beta) {
  switch (w) {
    case DubinsWord::LSL: return word_lsl(d, alpha, beta);
    case DubinsWord::RSR: return word_rsr(d, alpha, beta);
    case DubinsWord::LSR: return word_lsr(d, alpha, beta);
    case DubinsWord::RSL: return word_rsl(d, alpha, beta);
    case DubinsWord::LRL: return word_lrl(d, alpha, beta);
    case DubinsWord::RLR: return word_rlr(d, alpha, beta);
  }
  return std::nullopt;
}

// Raw (unwrapped-heading) pose used while composing segments.
struct RawPose {
  double x, y, theta;
};

inline RawPose seg_step(const RawPose& p, int sign, double len) {
  if (sign == 0) {
    return {p.x + len * std::cos(p.theta), p.y + len * std::sin(p.theta), p.theta};
  }
  // grouped so a zero-length arc is an exact no-op
  if (sign > 0) {
    const double th = p.theta + len;
    return {p.x + (std::sin(th) - std::sin(p.theta)), p.y - (std::cos(th) - std::cos(p.theta)), th};
  }
  const double th = p.theta - len;
  return {p.x - (std::sin(th) - std::sin(p.theta)), p.y + (std::cos(th) - std::cos(p.theta)), th};
}

inline RawPose compose(const PlanarPose& q0, DubinsWord w, const std::array<double, 3>& seg) {
  RawPose p{q0.x, q0.y, q0.theta};
  const auto signs = word_signs(w);
  for (int i = 0; i < 3; ++i) p = seg_step(p, signs[static_cast<size_t>(i)], seg[static_cast<size_t>(i)]);
  return p;
}

}  // namespace detail

inline void check_pose(const PlanarPose& q, const char* who) {
  if (!std::isfinite(q.x) || !std::isfinite(q.y) || !std::isfinite(q.theta)) {
    throw std::invalid_argument(std::string(who) + ": pose must be finite");
  }
}

// Construct one word between poses, or nullopt when that word cannot reach the
// goal. Every candidate is verified by composing its segments; constructions
// that only exist because a discriminant was clamped get discarded here.
inline std::optional<DubinsPath> solve_word(const PlanarPose& q0, const PlanarPose& q1,
                                            DubinsWord w) {
  check_pose(q0, "solve_word");
  check_pose(q1, "solve_word");
  const double dx = q1.x - q0.x;
  const double dy = q1.y - q0.y;
  const double d = std::hypot(dx, dy);
  const double phi = std::atan2(dy, dx);
  const double alpha = q0.theta - phi;
  const double beta = q1.theta - phi;
  const auto seg = detail::word_params(w, d, alpha, beta);
  if (!seg) return std::nullopt;

  const detail::RawPose end = detail::compose(q0, w, *seg);
  const double pos_err = std::hypot(end.x - q1.x, end.y - q1.y);
  const double ang_err = std::abs(normalize_angle(end.theta - q1.theta));
  if (pos_err > 1e-10 * (1.0 + d) || ang_err > 1e-10) return std::nullopt;

  DubinsPath path;
  path.word = w;
  path.seg = *seg;
  path.length = (*seg)[0] + (*seg)[1] + (*seg)[2];
  return path;
}

inline constexpr std::array<DubinsWord, 6> kWordOrder = {DubinsWord::LSL, DubinsWord::RSR,
                                                         DubinsWord::LSR, DubinsWord::RSL,
                                                         DubinsWord::LRL, DubinsWord::RLR};

// Minimum over the six words; ties within 1e-12 go to the earlier word in
// kWordOrder.
inline DubinsPath shortest_path(const PlanarPose& q0, const PlanarPose& q1) {
  check_pose(q0, "shortest_path");
  check_pose(q1, "shortest_path");
  if (std::abs(q1.x - q0.x) <= 1e-12 && std::abs(q1.y - q0.y) <= 1e-12 &&
      std::abs(normalize_angle(q1.theta - q0.theta)) <= 1e-12) {
    return DubinsPath{DubinsWord::LSL, {0.0, 0.0, 0.0}, 0.0};
  }
  std::vector<DubinsPath> feasible;
  for (DubinsWord w : kWordOrder) {
    if (const auto cand = solve_word(q0, q1, w)) feasible.push_back(*cand);
  }
  if (feasible.empty()) throw std::runtime_error("shortest_path: no word reached the goal");
  double min_len = feasible.front().length;
  for (const auto& p : feasible) min_len = std::min(min_len, p.length);
  for (const auto& p : feasible) {
    if (p.length <= min_len + 1e-12) return p;  // kWordOrder position breaks ties
  }
  return feasible.front();
}

// n poses at uniform arclength over [0, L]; the first is q0 exactly.
inline std::vector<PlanarPose> sample_path(const DubinsPath& path, const PlanarPose& q0, int n) {
  if (n < 2) throw std::invalid_argument("sample_path: need at least 2 samples");
  check_pose(q0, "sample_path");
  const auto signs = word_signs(path.word);
  const detail::RawPose p0{q0.x, q0.y, q0.theta};
  const detail::RawPose p1 = detail::seg_step(p0, signs[0], path.seg[0]);
  const detail::RawPose p2 = detail::seg_step(p1, signs[1], path.seg[1]);
  const double c0 = path.seg[0];
  const double c1 = path.seg[0] + path.seg[1];
  std::vector<PlanarPose> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double s = path.length * i / (n - 1);
    detail::RawPose p{};
    if (s <= c0) {
      p = detail::seg_step(p0, signs[0], s);
    } else if (s <= c1) {
      p = detail::seg_step(p1, signs[1], s - c0);
    } else {
      p = detail::seg_step(p2, signs[2], s - c1);
    }
    out.emplace_back(p.x, p.y, p.theta);
  }
  return out;
}

}  // namespace geoctrl
