// Command-line front end. Every subcommand prints one JSON document to stdout:
//   { "command": ..., "inputs": ..., "results": ..., "meta": ... }
// CSV exists only for hb-dist --batch. Exit codes: 0 success, 1 solver failure
// (structured JSON error on stdout), 2 usage problems (message on stderr).

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "geoctrl/geoctrl.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kToolVersion = "0.1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Eigen::MatrixXd parse_matrix(const std::string& text, const std::string& flag) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    throw UsageError(flag + ": malformed JSON (" + e.what() + ")");
  }
  if (!j.is_array() || j.empty()) throw UsageError(flag + ": expected a non-empty JSON matrix");
  const size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw UsageError(flag + ": expected rows of numbers");
  const size_t cols = j[0].size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw UsageError(flag + ": ragged matrix");
    for (size_t c = 0; c < cols; ++c) {
      if (!j[i][c].is_number()) throw UsageError(flag + ": matrix entries must be numbers");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = j[i][c].get<double>();
    }
  }
  return m;
}

Eigen::VectorXd parse_vector(const std::string& text, const std::string& flag) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    throw UsageError(flag + ": malformed JSON (" + e.what() + ")");
  }
  if (!j.is_array()) throw UsageError(flag + ": expected a JSON array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw UsageError(flag + ": entries must be numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

std::vector<Eigen::VectorXd> parse_points(const std::string& text, const std::string& flag) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    throw UsageError(flag + ": malformed JSON (" + e.what() + ")");
  }
  if (!j.is_array() || j.empty()) throw UsageError(flag + ": expected an array of points");
  std::vector<Eigen::VectorXd> pts;
  for (const auto& row : j) {
    if (!row.is_array()) throw UsageError(flag + ": each point must be an array");
    Eigen::VectorXd v(static_cast<Eigen::Index>(row.size()));
    for (size_t i = 0; i < row.size(); ++i) {
      if (!row[i].is_number()) throw UsageError(flag + ": entries must be numbers");
      v(static_cast<Eigen::Index>(i)) = row[i].get<double>();
    }
    pts.push_back(std::move(v));
  }
  return pts;
}

ordered_json vec_json(const Eigen::VectorXd& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

ordered_json mat_json(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json finite_or_null(double v) {
  return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

ordered_json envelope(const std::string& command, ordered_json inputs, ordered_json results,
                      ordered_json tolerances, long seed) {
  ordered_json doc;
  doc["command"] = command;
  doc["inputs"] = std::move(inputs);
  doc["results"] = std::move(results);
  ordered_json meta;
  meta["tool"] = "geoctrl";
  meta["version"] = kToolVersion;
  meta["seed"] = seed;
  meta["tolerances"] = std::move(tolerances);
  doc["meta"] = std::move(meta);
  return doc;
}

void emit(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

// Unknown system names are usage problems (exit 2), not solver failures.
geoctrl::systems::CatalogEntry catalog_or_usage(const std::string& key) {
  try {
    return geoctrl::systems::catalog(key);
  } catch (const std::invalid_argument&) {
    std::string msg = "--system: unknown frame '" + key + "'; choose from";
    for (const auto& k : geoctrl::systems::catalog_keys()) msg += " " + k;
    throw UsageError(msg);
  }
}

geoctrl::systems::ControlledEntry controlled_or_usage(const std::string& key) {
  try {
    return geoctrl::systems::controlled(key);
  } catch (const std::invalid_argument&) {
    std::string msg = "--system: unknown system '" + key + "'; choose from";
    for (const auto& k : geoctrl::systems::controlled_keys()) msg += " " + k;
    throw UsageError(msg);
  }
}

// ---- subcommand payloads ----

ordered_json run_kalman(const std::string& a_text, const std::string& b_text, long seed) {
  const Eigen::MatrixXd a = parse_matrix(a_text, "--A");
  const Eigen::MatrixXd b = parse_matrix(b_text, "--B");
  geoctrl::LinearSystem sys(a, b);
  const auto rep = geoctrl::kalman_test(sys);
  ordered_json inputs{{"A", mat_json(a)}, {"B", mat_json(b)}};
  ordered_json results;
  results["rank"] = rep.rank;
  results["controllable"] = rep.controllable;
  results["singular_values"] = vec_json(rep.singular_values);
  ordered_json tol{{"rank_threshold", "max(n, n*k) * eps * sigma_max"}};
  return envelope("kalman", inputs, results, tol, seed);
}

ordered_json run_linearize(const std::string& system, const std::string& x0_text,
                           const std::string& u0_text, long seed) {
  const auto entry = controlled_or_usage(system);
  const Eigen::VectorXd x0 = parse_vector(x0_text, "--x0");
  const Eigen::VectorXd u0 = parse_vector(u0_text, "--u0");
  if (x0.size() != entry.state_dim) throw UsageError("--x0: wrong dimension for " + system);
  if (u0.size() != entry.input_dim) throw UsageError("--u0: wrong dimension for " + system);
  const geoctrl::LinearSystem sys = geoctrl::linearize(entry.f, x0, u0);
  const auto rep = geoctrl::kalman_test(sys);
  ordered_json inputs{{"system", system}, {"x0", vec_json(x0)}, {"u0", vec_json(u0)}};
  ordered_json results;
  results["A"] = mat_json(sys.A);
  results["B"] = mat_json(sys.B);
  results["kalman"] = ordered_json{{"rank", rep.rank}, {"controllable", rep.controllable}};
  ordered_json tol{{"equilibrium", geoctrl::kEquilibriumTol}};
  return envelope("linearize", inputs, results, tol, seed);
}

ordered_json run_bracket(const std::string& system, int i, int j, const std::string& at_text,
                         double flow_t, long seed) {
  const auto entry = catalog_or_usage(system);
  const int k = static_cast<int>(entry.fields.size());
  if (i < 0 || i >= k || j < 0 || j >= k) throw UsageError("--i/--j: field index out of range");
  Eigen::VectorXd q = entry.default_point;
  if (!at_text.empty()) q = parse_vector(at_text, "--at");
  const Eigen::VectorXd alg =
      geoctrl::bracket(entry.fields[static_cast<size_t>(i)], entry.fields[static_cast<size_t>(j)], q);
  const Eigen::VectorXd flw = geoctrl::bracket_by_flows(
      entry.fields[static_cast<size_t>(i)], entry.fields[static_cast<size_t>(j)], q, flow_t);
  ordered_json inputs{{"system", system}, {"i", i}, {"j", j}, {"at", vec_json(q)},
                      {"flow_t", flow_t}};
  ordered_json results;
  results["bracket"] = vec_json(alg);
  results["flow_commutator_estimate"] = vec_json(flw);
  ordered_json tol{{"fd_step_scale", "eps^(1/3) * max(1, |coord|)"},
                   {"flow_steps_per_leg", 100}};
  return envelope("bracket", inputs, results, tol, seed);
}

ordered_json run_larc(const std::string& system, int depth, const std::string& at_text, long seed) {
  const auto entry = catalog_or_usage(system);
  Eigen::VectorXd q;
  if (!at_text.empty()) {
    q = parse_vector(at_text, "--at");
  } else {
    // randomized demo point, reproducible through --seed
    std::mt19937 gen(static_cast<unsigned>(seed));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    q = entry.default_point;
    for (Eigen::Index c = 0; c < q.size(); ++c) q(c) += 0.5 * u(gen);
  }
  const auto res = geoctrl::larc_rank(entry.fields, q, depth);
  ordered_json inputs{{"system", system}, {"depth", depth}, {"at", vec_json(q)}};
  ordered_json basis = ordered_json::array();
  for (const auto& tree : res.basis) basis.push_back(tree.format(entry.names));
  ordered_json results;
  results["rank"] = res.rank;
  results["dim"] = entry.fields.front().dim;
  results["full_rank"] = (res.rank == entry.fields.front().dim);
  results["full_rank_depth"] = res.full_rank_depth;
  results["basis"] = std::move(basis);
  results["rank_is_certified_lower_bound"] = true;  // smooth-category rank can only be bounded below
  ordered_json tol{{"rank_threshold", "max(n, cols) * eps * sigma_max"}};
  return envelope("larc", inputs, results, tol, seed);
}

ordered_json run_involutive(const std::string& system, const std::string& points_text, long seed) {
  const auto entry = catalog_or_usage(system);
  std::vector<Eigen::VectorXd> pts;
  if (!points_text.empty()) {
    pts = parse_points(points_text, "--points");
  } else {
    // fixed off-axis probes; component pattern keeps them away from symmetry planes
    const int n = entry.fields.front().dim;
    for (int k = 1; k <= 3; ++k) {
      Eigen::VectorXd q = entry.default_point;
      for (int c = 0; c < n; ++c) q(c) += 0.1 * k + 0.07 * (c + 1);
      pts.push_back(q);
    }
  }
  const bool flat = geoctrl::is_involutive(entry.fields, pts);
  ordered_json jpts = ordered_json::array();
  for (const auto& p : pts) jpts.push_back(vec_json(p));
  ordered_json inputs{{"system", system}, {"points", jpts}};
  ordered_json results{{"involutive", flat}};
  ordered_json tol{{"residual_rel", 1e-6}, {"independence", "numeric rank of the frame"}};
  return envelope("involutive", inputs, results, tol, seed);
}

ordered_json run_train(double x1, double x2, int samples, long seed) {
  const geoctrl::DIState s{x1, x2};
  const auto plan = geoctrl::di_min_time(s);
  ordered_json inputs{{"x1", x1}, {"x2", x2}};
  ordered_json results;
  results["u_first"] = plan.u_first;
  results["t_switch"] = plan.t_switch;
  results["t_total"] = plan.t_total;
  if (samples > 0) {
    ordered_json arr = ordered_json::array();
    for (const auto& smp : geoctrl::di_simulate(s, plan, samples)) {
      arr.push_back(ordered_json{{"t", smp.t}, {"x1", smp.state.x1}, {"x2", smp.state.x2},
                                 {"u", smp.u}});
    }
    results["samples"] = std::move(arr);
  }
  ordered_json tol{{"on_curve", 1e-12}, {"origin", 1e-12}};
  return envelope("train", inputs, results, tol, seed);
}

ordered_json run_dubins(const std::vector<double>& from, const std::vector<double>& to, int samples,
                        long seed) {
  if (from.size() != 3 || to.size() != 3) throw UsageError("--from/--to: expected x y theta");
  const geoctrl::PlanarPose q0(from[0], from[1], from[2]);
  const geoctrl::PlanarPose q1(to[0], to[1], to[2]);
  const auto path = geoctrl::shortest_path(q0, q1);
  ordered_json inputs{{"from", ordered_json{from[0], from[1], from[2]}},
                      {"to", ordered_json{to[0], to[1], to[2]}}};
  ordered_json results;
  results["word"] = geoctrl::word_name(path.word);
  results["segments"] = ordered_json{path.seg[0], path.seg[1], path.seg[2]};
  results["length"] = path.length;
  if (samples > 0) {
    ordered_json arr = ordered_json::array();
    for (const auto& p : geoctrl::sample_path(path, q0, samples)) {
      arr.push_back(ordered_json{{"x", p.x}, {"y", p.y}, {"theta", p.theta}});
    }
    results["samples"] = std::move(arr);
  }
  ordered_json tol{{"tie", 1e-12}, {"endpoint_check", "1e-10 * (1 + d)"}};
  return envelope("dubins", inputs, results, tol, seed);
}

ordered_json run_elastica(double r, double beta0, double h2_0, double length, int steps,
                          int samples, long seed) {
  const geoctrl::ElasticaParams params{r, beta0, h2_0};
  const auto regime = geoctrl::classify(params);
  const auto traj = geoctrl::integrate_extremal(params, length, steps);
  ordered_json inputs{{"r", r}, {"beta0", beta0}, {"h2_0", h2_0}, {"length", length},
                      {"steps", steps}};
  ordered_json results;
  results["regime"] = geoctrl::regime_name(regime);
  results["pendulum_energy"] = geoctrl::pendulum_energy(params);
  results["bending_energy"] = geoctrl::elastic_energy(traj);
  if (samples > 1) {
    ordered_json arr = ordered_json::array();
    for (int k = 0; k < samples; ++k) {
      const size_t idx = static_cast<size_t>(
          std::llround(static_cast<double>(k) * steps / (samples - 1)));
      const auto& smp = traj[std::min(idx, traj.size() - 1)];
      arr.push_back(ordered_json{{"s", smp.s}, {"x", smp.x}, {"y", smp.y}, {"theta", smp.theta},
                                 {"beta", smp.beta}, {"h2", smp.h2}});
    }
    results["samples"] = std::move(arr);
  }
  ordered_json tol{{"regime_boundary", "1e-12 * max(1, r)"}};
  return envelope("elastica", inputs, results, tol, seed);
}

ordered_json run_hb_exp(double theta0, double h3, double t, int samples, long seed) {
  const geoctrl::GeodesicParam g{theta0, h3, t};
  const auto q = geoctrl::exp_map(g);
  ordered_json inputs{{"theta0", theta0}, {"h3", h3}, {"t", t}};
  ordered_json results;
  results["endpoint"] = ordered_json{{"x", q.x}, {"y", q.y}, {"z", q.z}};
  results["conjugate_time"] = finite_or_null(geoctrl::conjugate_time(h3));
  results["maxwell_time"] = finite_or_null(geoctrl::maxwell_time(h3));
  if (samples > 1) {
    ordered_json arr = ordered_json::array();
    for (int k = 0; k < samples; ++k) {
      const double tk = t * k / (samples - 1);
      const auto pk = geoctrl::exp_map({theta0, h3, tk});
      arr.push_back(ordered_json{{"t", tk}, {"x", pk.x}, {"y", pk.y}, {"z", pk.z}});
    }
    results["samples"] = std::move(arr);
  }
  ordered_json tol{{"series_switch", 1e-2}};
  return envelope("hb-exp", inputs, results, tol, seed);
}

ordered_json minimizer_json(const geoctrl::GeodesicParam& g) {
  return ordered_json{{"theta0", g.theta0}, {"h3", g.h3}, {"t", g.t}};
}

ordered_json run_hb_dist(double x, double y, double z, long seed) {
  const auto res = geoctrl::solve_geodesic({x, y, z});
  ordered_json inputs{{"x", x}, {"y", y}, {"z", z}};
  ordered_json results;
  results["distance"] = res.distance;
  ordered_json mins = ordered_json::array();
  for (const auto& g : res.minimizers) mins.push_back(minimizer_json(g));
  results["minimizers"] = std::move(mins);
  results["axis_family"] = res.axis_family;
  ordered_json tol{{"mu_bisection", 1e-14}};
  return envelope("hb-dist", inputs, results, tol, seed);
}

std::string format_double(double v) {
  // shortest round-trip form, same as the JSON emitter
  return ordered_json(v).dump();
}

int run_hb_dist_batch(const std::string& path, const std::string& format) {
  if (format != "csv" && format != "json") throw UsageError("--format: expected json or csv");
  std::ifstream in(path);
  if (!in) throw UsageError("--batch: cannot open " + path);
  std::vector<std::array<double, 3>> rows;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (lineno == 1 && line.find_first_not_of("xyz, \t\r") == std::string::npos) continue;  // header
    std::istringstream ss(line);
    std::array<double, 3> row{};
    char comma = 0;
    if (!(ss >> row[0] >> comma >> row[1] >> comma >> row[2])) {
      throw UsageError("--batch: malformed line " + std::to_string(lineno));
    }
    rows.push_back(row);
  }
  if (format == "csv") {
    std::cout << "x,y,z,distance,theta0,h3,t,axis_family\n";
    for (const auto& r : rows) {
      const auto res = geoctrl::solve_geodesic({r[0], r[1], r[2]});
      const geoctrl::GeodesicParam g =
          res.minimizers.empty() ? geoctrl::GeodesicParam{} : res.minimizers.front();
      std::cout << format_double(r[0]) << ',' << format_double(r[1]) << ',' << format_double(r[2])
                << ',' << format_double(res.distance) << ',' << format_double(g.theta0) << ','
                << format_double(g.h3) << ',' << format_double(g.t) << ','
                << (res.axis_family ? 1 : 0) << "\n";
    }
    return 0;
  }
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    const auto res = geoctrl::solve_geodesic({r[0], r[1], r[2]});
    ordered_json item{{"x", r[0]}, {"y", r[1]}, {"z", r[2]}, {"distance", res.distance},
                      {"axis_family", res.axis_family}};
    ordered_json mins = ordered_json::array();
    for (const auto& g : res.minimizers) mins.push_back(minimizer_json(g));
    item["minimizers"] = std::move(mins);
    arr.push_back(std::move(item));
  }
  emit(arr);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geometric control toolkit"};
  app.require_subcommand(1);

  long seed = 0;
  app.add_option("--seed", seed, "seed for randomized demo inputs")->capture_default_str();
  std::string format = "json";
  if (const char* env = std::getenv("GEOCTRL_FORMAT")) format = env;
  app.add_option("--format", format, "output format (csv only for hb-dist --batch)");

  auto* kalman = app.add_subcommand("kalman", "controllability of xdot = Ax + Bu");
  std::string a_text, b_text;
  kalman->add_option("--A", a_text, "state matrix as JSON rows")->required();
  kalman->add_option("--B", b_text, "input matrix as JSON rows")->required();

  auto* linearize = app.add_subcommand("linearize", "Jacobian linearization at an equilibrium");
  std::string lin_system = "pendulum", x0_text = "[]", u0_text = "[]";
  linearize->add_option("--system", lin_system, "pendulum | train | oscillator")
      ->capture_default_str();
  linearize->add_option("--x0", x0_text, "equilibrium state, JSON array")->required();
  linearize->add_option("--u0", u0_text, "equilibrium input, JSON array")->required();

  auto* bracket = app.add_subcommand("bracket", "Lie bracket of two catalog fields");
  std::string br_system = "heisenberg", br_at;
  int br_i = 0, br_j = 1;
  double flow_t = 1e-3;
  bracket->add_option("--system", br_system, "catalog frame")->capture_default_str();
  bracket->add_option("--i", br_i, "first field index")->capture_default_str();
  bracket->add_option("--j", br_j, "second field index")->capture_default_str();
  bracket->add_option("--at", br_at, "evaluation point, JSON array (default: catalog point)");
  bracket->add_option("--flow-t", flow_t, "commutator leg time")->capture_default_str();

  auto* larc = app.add_subcommand("larc", "bracket-generating rank of a catalog frame");
  std::string larc_system = "heisenberg", larc_at;
  int larc_depth = 2;
  larc->add_option("--system", larc_system, "catalog frame")->capture_default_str();
  larc->add_option("--depth", larc_depth, "bracket depth cap")->capture_default_str();
  larc->add_option("--at", larc_at, "evaluation point, JSON array (default: seeded random)");

  auto* involutive = app.add_subcommand("involutive", "pointwise involutivity of a frame");
  std::string inv_system = "foliation", inv_points;
  involutive->add_option("--system", inv_system, "catalog frame")->capture_default_str();
  involutive->add_option("--points", inv_points, "sample points, JSON array of arrays");

  auto* train = app.add_subcommand("train", "time-optimal double integrator to the origin");
  double x1 = 0.0, x2 = 0.0;
  int train_samples = 0;
  train->add_option("--x1", x1, "initial position")->required();
  train->add_option("--x2", x2, "initial velocity")->required();
  train->add_option("--samples", train_samples, "emit N states along the plan");

  auto* dubins = app.add_subcommand("dubins", "shortest bounded-curvature path");
  std::vector<double> from{0.0, 0.0, 0.0}, to{0.0, 0.0, 0.0};
  int dub_samples = 0;
  dubins->add_option("--from", from, "start pose: x y theta")->expected(3)->required();
  dubins->add_option("--to", to, "goal pose: x y theta")->expected(3)->required();
  dubins->add_option("--samples", dub_samples, "emit N poses along the path");

  auto* elastica = app.add_subcommand("elastica", "Euler elastica extremal");
  double el_r = 1.0, el_beta0 = 0.0, el_h2 = 0.0, el_length = 1.0;
  int el_steps = 1000, el_samples = 9;
  elastica->add_option("--r", el_r, "pendulum stiffness")->capture_default_str();
  elastica->add_option("--beta0", el_beta0, "initial pendulum angle")->capture_default_str();
  elastica->add_option("--h20", el_h2, "initial pendulum momentum")->capture_default_str();
  elastica->add_option("--length", el_length, "arclength horizon")->capture_default_str();
  elastica->add_option("--steps", el_steps, "RK4 steps")->capture_default_str();
  elastica->add_option("--samples", el_samples, "samples in the output")->capture_default_str();

  auto* hb_exp = app.add_subcommand("hb-exp", "Heisenberg geodesic endpoint");
  double hb_theta0 = 0.0, hb_h3 = 0.0, hb_t = 1.0;
  int hb_samples = 0;
  hb_exp->add_option("--theta0", hb_theta0, "initial covector angle")->capture_default_str();
  hb_exp->add_option("--h3", hb_h3, "vertical momentum")->capture_default_str();
  hb_exp->add_option("--t", hb_t, "arclength")->capture_default_str();
  hb_exp->add_option("--samples", hb_samples, "emit N points along the geodesic");

  auto* hb_dist = app.add_subcommand("hb-dist", "Carnot-Caratheodory distance from the origin");
  double qx = 0.0, qy = 0.0, qz = 0.0;
  std::string batch_path;
  hb_dist->add_option("--x", qx, "target x")->capture_default_str();
  hb_dist->add_option("--y", qy, "target y")->capture_default_str();
  hb_dist->add_option("--z", qz, "target z")->capture_default_str();
  hb_dist->add_option("--batch", batch_path, "CSV file of x,y,z rows");

  // Let the global --seed / --format flags appear after the subcommand name.
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      return app.exit(e);  // help goes to stdout, exit 0
    }
    std::cerr << e.what() << "\n";
    return 2;
  }

  std::string command = "?";
  try {
    const bool batch = app.got_subcommand(hb_dist) && !batch_path.empty();
    if (format != "json" && !batch) {
      throw UsageError("--format " + format + " is only available for hb-dist --batch");
    }
    if (app.got_subcommand(kalman)) {
      command = "kalman";
      emit(run_kalman(a_text, b_text, seed));
    } else if (app.got_subcommand(linearize)) {
      command = "linearize";
      emit(run_linearize(lin_system, x0_text, u0_text, seed));
    } else if (app.got_subcommand(bracket)) {
      command = "bracket";
      emit(run_bracket(br_system, br_i, br_j, br_at, flow_t, seed));
    } else if (app.got_subcommand(larc)) {
      command = "larc";
      emit(run_larc(larc_system, larc_depth, larc_at, seed));
    } else if (app.got_subcommand(involutive)) {
      command = "involutive";
      emit(run_involutive(inv_system, inv_points, seed));
    } else if (app.got_subcommand(train)) {
      command = "train";
      emit(run_train(x1, x2, train_samples, seed));
    } else if (app.got_subcommand(dubins)) {
      command = "dubins";
      emit(run_dubins(from, to, dub_samples, seed));
    } else if (app.got_subcommand(elastica)) {
      command = "elastica";
      // Default resolution follows the horizon: one RK4 step per 1e-3 of arclength.
      if (elastica->count("--steps") == 0 && el_length > 0.0) {
        const long long n = std::llround(1000.0 * std::min(el_length, 1e4));
        el_steps = static_cast<int>(std::max(1LL, n));
      }
      emit(run_elastica(el_r, el_beta0, el_h2, el_length, el_steps, el_samples, seed));
    } else if (app.got_subcommand(hb_exp)) {
      command = "hb-exp";
      emit(run_hb_exp(hb_theta0, hb_h3, hb_t, hb_samples, seed));
    } else if (app.got_subcommand(hb_dist)) {
      command = "hb-dist";
      if (!batch_path.empty()) return run_hb_dist_batch(batch_path, format);
      emit(run_hb_dist(qx, qy, qz, seed));
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    ordered_json err;
    err["command"] = command;
    err["error"] = ordered_json{{"message", e.what()}};
    emit(err);
    return 1;
  }
  return 0;
}
