#pragma once

#include <Eigen/Dense>

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "geoctrl/numeric.hpp"
#include "geoctrl/vector_field.hpp"

namespace geoctrl {

// [V, W](q) = J_W(q) V(q) - J_V(q) W(q).
inline Eigen::VectorXd bracket(const VectorFieldSpec& v, const VectorFieldSpec& w,
                               const Eigen::VectorXd& q) {
  check_point(v, q, "bracket");
  check_point(w, q, "bracket");
  if (v.dim != w.dim) throw std::invalid_argument("bracket: field dimensions differ");
  return field_jacobian(w, q) * v.eval(q) - field_jacobian(v, q) * w.eval(q);
}

// The bracket as a field of its own, so brackets nest.
inline VectorFieldSpec bracket_field(const VectorFieldSpec& v, const VectorFieldSpec& w) {
  if (v.dim != w.dim) throw std::invalid_argument("bracket_field: field dimensions differ");
  VectorFieldSpec out;
  out.dim = v.dim;
  out.eval = [v, w](const Eigen::VectorXd& q) { return bracket(v, w, q); };
  return out;
}

// Group-free bracket estimate from the flow commutator
//   e^{-tW} e^{-tV} e^{tW} e^{tV} (q) = q + t^2 [V, W](q) + o(t^2).
// Each leg is RK4 with 100 fixed steps.
inline Eigen::VectorXd bracket_by_flows(const VectorFieldSpec& v, const VectorFieldSpec& w,
                                        const Eigen::VectorXd& q, double t) {
  check_point(v, q, "bracket_by_flows");
  check_point(w, q, "bracket_by_flows");
  if (v.dim != w.dim) throw std::invalid_argument("bracket_by_flows: field dimensions differ");
  if (!(t > 0.0)) throw std::invalid_argument("bracket_by_flows: t must be positive");
  const int steps = 100;
  auto fv = [&v](const Eigen::VectorXd& p) { return v.eval(p); };
  auto fw = [&w](const Eigen::VectorXd& p) { return w.eval(p); };
  auto bv = [&v](const Eigen::VectorXd& p) { return (-v.eval(p)).eval(); };
  auto bw = [&w](const Eigen::VectorXd& p) { return (-w.eval(p)).eval(); };
  Eigen::VectorXd p = flow_rk4(fv, q, t, steps);
  p = flow_rk4(fw, p, t, steps);
  p = flow_rk4(bv, p, t, steps);
  p = flow_rk4(bw, p, t, steps);
  if (!p.allFinite() || p.norm() > 1e12) {
    throw std::runtime_error("bracket_by_flows: flow integration diverged");
  }
  return (p - q) / (t * t);
}

// Left-normed bracket word [f_{i_k}, [..., [f_{i_2}, f_{i_1}]...]] over a frame.
// indices[0] is the innermost (rightmost) leaf.
struct BracketTree {
  std::vector<int> indices;

  int depth() const { return static_cast<int>(indices.size()); }

  std::string format(const std::vector<std::string>& names) const {
    if (indices.empty()) return "";
    std::string s = names.at(static_cast<size_t>(indices[0]));
    for (size_t d = 1; d < indices.size(); ++d) {
      s = "[" + names.at(static_cast<size_t>(indices[d])) + "," + s + "]";
    }
    return s;
  }

  VectorFieldSpec field(const std::vector<VectorFieldSpec>& frame) const {
    if (indices.empty()) throw std::invalid_argument("BracketTree: empty word");
    VectorFieldSpec f = frame.at(static_cast<size_t>(indices[0]));
    for (size_t d = 1; d < indices.size(); ++d) {
      f = bracket_field(frame.at(static_cast<size_t>(indices[d])), f);
    }
    return f;
  }
};

struct LarcResult {
  int rank = 0;                    // numeric rank of all bracket columns up to max_depth
  int full_rank_depth = -1;        // smallest depth reaching dim, -1 if never
  std::vector<BracketTree> basis;  // greedy independent subset, enumeration order
};

namespace detail {

inline std::vector<BracketTree> enumerate_left_normed(int n_fields, int max_depth) {
  std::vector<BracketTree> trees;
  std::vector<BracketTree> level;
  for (int i = 0; i < n_fields; ++i) level.push_back(BracketTree{{i}});
  trees = level;
  for (int d = 2; d <= max_depth; ++d) {
    std::vector<BracketTree> next;
    for (const auto& t : level) {
      for (int j = 0; j < n_fields; ++j) {
        if (t.depth() == 1 && j == t.indices[0]) continue;  // [f, f] = 0
        BracketTree ext = t;
        ext.indices.push_back(j);
        next.push_back(std::move(ext));
      }
    }
    trees.insert(trees.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return trees;
}

}  // namespace detail

// Evaluate the left-normed bracket span of `frame` at q, depth-capped.
inline LarcResult larc_rank(const std::vector<VectorFieldSpec>& frame, const Eigen::VectorXd& q,
                            int max_depth) {
  if (frame.empty()) throw std::invalid_argument("larc_rank: empty frame");
  if (max_depth < 1) throw std::invalid_argument("larc_rank: max_depth must be >= 1");
  const int n = frame[0].dim;
  for (const auto& f : frame) {
    if (f.dim != n) throw std::invalid_argument("larc_rank: mixed field dimensions");
    check_point(f, q, "larc_rank");
  }

  const std::vector<BracketTree> trees =
      detail::enumerate_left_normed(static_cast<int>(frame.size()), max_depth);
  Eigen::MatrixXd cols(n, static_cast<Eigen::Index>(trees.size()));
  for (size_t c = 0; c < trees.size(); ++c) {
    cols.col(static_cast<Eigen::Index>(c)) = trees[c].field(frame).eval(q);
  }

  LarcResult res;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cols);
  res.rank = numeric_rank(svd.singularValues(), cols.rows(), cols.cols());

  // Greedy sweep in enumeration order (shallow words first) for a basis and
  // the depth at which the span first fills.
  const double sigma_max = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  const double thresh = static_cast<double>(std::max(cols.rows(), cols.cols())) *
                        std::numeric_limits<double>::epsilon() * sigma_max;
  Eigen::MatrixXd basis_cols(n, n);
  int picked = 0;
  for (size_t c = 0; c < trees.size() && picked < n; ++c) {
    Eigen::VectorXd col = cols.col(static_cast<Eigen::Index>(c));
    Eigen::VectorXd resid = col;
    if (picked > 0) {
      const auto Q = basis_cols.leftCols(picked);
      resid -= Q * (Q.transpose() * col);
    }
    if (resid.norm() > thresh) {
      basis_cols.col(picked) = resid / resid.norm();
      ++picked;
      res.basis.push_back(trees[c]);
      if (picked == n && res.full_rank_depth < 0) res.full_rank_depth = trees[c].depth();
    }
  }
  return res;
}

// Pointwise involutivity of a frame of independent fields: every pairwise
// bracket must lie in the frame's span at each sample. Dependent fields at a
// sample are a precondition violation, not a "false".
inline bool is_involutive(const std::vector<VectorFieldSpec>& frame,
                          const std::vector<Eigen::VectorXd>& samples) {
  if (frame.size() < 2) throw std::invalid_argument("is_involutive: need at least two fields");
  const int n = frame[0].dim;
  const int k = static_cast<int>(frame.size());
  for (const auto& f : frame) {
    if (f.dim != n) throw std::invalid_argument("is_involutive: mixed field dimensions");
  }
  if (samples.empty()) throw std::invalid_argument("is_involutive: no sample points");

  for (const auto& q : samples) {
    Eigen::MatrixXd F(n, k);
    double scale = 1.0;
    for (int i = 0; i < k; ++i) {
      check_point(frame[static_cast<size_t>(i)], q, "is_involutive");
      F.col(i) = frame[static_cast<size_t>(i)].eval(q);
      scale = std::max(scale, F.col(i).norm());
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(F, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (numeric_rank(svd.singularValues(), n, k) < k) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.6g", q(0));
      throw std::domain_error(
          std::string("is_involutive: fields are dependent at a sample point (x0 = ") + buf + ")");
    }
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        const Eigen::VectorXd b =
            bracket(frame[static_cast<size_t>(i)], frame[static_cast<size_t>(j)], q);
        const double bn = b.norm();
        // Finite-difference noise floor: a numerically zero bracket is in any span.
        if (bn <= 1e-9 * scale) continue;
        const Eigen::VectorXd resid = F * svd.solve(b) - b;
        if (resid.norm() > 1e-6 * bn) return false;
      }
    }
  }
  return true;
}

}  // namespace geoctrl
