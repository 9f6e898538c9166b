#include "gaugekit/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <atomic>
#include <future>
#include <thread>
#include <json.hpp>
#include <random>

#include "gaugekit/fields.hpp"
#include "gaugekit/transport.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace gaugekit {

namespace {

const std::vector<std::string> kTasks = {"geodesic",  "kk_geodesic",        "lorentz",
                                         "transport", "holonomy",           "validate_identities",
                                         "field_residuals", "scurv_check"};

struct ScenarioError : std::runtime_error {
  int code;
  ScenarioError(int c, const std::string& m) : std::runtime_error(m), code(c) {}
};

Vec to_vec(const json& a) {
  Vec v(a.size());
  for (size_t i = 0; i < a.size(); ++i) v(static_cast<int>(i)) = a[i].get<double>();
  return v;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(kExitParse, "cannot open scenario file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ScenarioError(kExitParse, std::string("JSON parse error: ") + e.what());
  }
  return j;
}

void check_schema(const json& j, std::vector<std::string>& problems) {
  if (!j.contains("schema") || j["schema"] != "gaugekit/1")
    problems.push_back("missing or unsupported \"schema\" (expected \"gaugekit/1\")");
  if (!j.contains("name") || !j["name"].is_string()) problems.push_back("missing \"name\"");
  if (!j.contains("task"))
    problems.push_back("missing \"task\"");
  else if (std::find(kTasks.begin(), kTasks.end(), j["task"].get<std::string>()) == kTasks.end())
    problems.push_back("unknown task \"" + j["task"].get<std::string>() + "\"");
  if (j.contains("thresholds") && !j["thresholds"].is_object())
    problems.push_back("\"thresholds\" must be an object");

  // Arity checks against the metric catalog where the state is declared.
  if (j.contains("metric") && j["metric"].is_string() &&
      metric_catalog_has(j["metric"].get<std::string>())) {
    int dim = metric_catalog(j["metric"].get<std::string>()).dim();
    const json params = j.value("params", json::object());
    for (const char* key : {"x0", "v0"}) {
      if (params.contains(key) && params[key].is_array() &&
          static_cast<int>(params[key].size()) != dim)
        problems.push_back(std::string("\"params.") + key + "\" has arity " +
                           std::to_string(params[key].size()) + " but metric \"" +
                           j["metric"].get<std::string>() + "\" has dimension " +
                           std::to_string(dim));
    }
  }
}

MetricField metric_for(const json& j, const RunOptions& opts) {
  if (!j.contains("metric")) throw ScenarioError(kExitParse, "scenario needs a \"metric\"");
  std::string id = j["metric"].get<std::string>();
  MetricField g;
  try {
    g = metric_catalog(id);
  } catch (const std::out_of_range& e) {
    throw ScenarioError(kExitCatalogMiss, e.what());
  }
  if (opts.fd_step > 0) g.fd_step = opts.fd_step;
  return g;
}

LocalConnectionForm connection_for(const json& j, const MetricField& g) {
  if (!j.contains("connection")) throw ScenarioError(kExitParse, "scenario needs a \"connection\"");
  std::string id = j["connection"].get<std::string>();
  try {
    return connection_catalog(id, g.chart);
  } catch (const std::out_of_range& e) {
    throw ScenarioError(kExitCatalogMiss, e.what());
  }
}

// Real EM tensor from an abelian curvature: F = i * Omega.
std::function<Mat(const Vec&)> em_tensor_from_u1(const LocalConnectionForm& conn, int chart) {
  AlgebraValuedForm f = curvature_form(conn, chart);
  int dim = f.dim();
  return [f, dim](const Vec& x) {
    FormValue v = f.at(x);
    Mat out = Mat::Zero(dim, dim);
    auto combos = combinations(dim, 2);
    for (size_t c = 0; c < combos.size(); ++c) {
      Complex val = Complex(0.0, 1.0) * v.comps[c](0, 0);
      out(combos[c][0], combos[c][1]) = val.real();
      out(combos[c][1], combos[c][0]) = -val.real();
    }
    return out;
  };
}

double measured_radius_error(const Trajectory& traj, double expected) {
  Vec center = Vec::Zero(traj.x.front().size());
  for (const Vec& p : traj.x) center += p;
  center /= static_cast<double>(traj.x.size());
  double worst = 0;
  for (const Vec& p : traj.x) worst = std::max(worst, std::abs((p - center).norm() - expected));
  return worst;
}

struct TaskContext {
  const json& scenario;
  const json params;
  const RunOptions& opts;
  RunResult& result;

  long steps(long fallback) const {
    if (opts.steps > 0) return opts.steps;
    return params.value("steps", fallback);
  }
  double fd(double fallback) const {
    if (opts.fd_step > 0) return opts.fd_step;
    return params.value("fd_step", fallback);
  }
  uint64_t seed() const {
    if (opts.seed_set) return opts.seed;
    return params.value("seed", 0ull);
  }
};

void maybe_write_csv(TaskContext& ctx, const Trajectory& traj) {
  const json outputs = ctx.scenario.value("outputs", json::object());
  std::string name = ctx.scenario["name"].get<std::string>();
  std::string file = outputs.value("trajectory_csv", name + ".csv");
  fs::path path = fs::path(ctx.opts.out_dir) / file;
  fs::create_directories(path.parent_path());
  write_trajectory_csv(path.string(), traj);
  ctx.result.files.push_back(path.string());
}

void task_geodesic(TaskContext& ctx) {
  MetricField g = metric_for(ctx.scenario, ctx.opts);
  Vec x0 = to_vec(ctx.params.at("x0")), v0 = to_vec(ctx.params.at("v0"));
  json span = ctx.params.value("t_span", json::array({0.0, 10.0}));
  long steps = ctx.steps(static_cast<long>(1000 * (span[1].get<double>() - span[0].get<double>())));
  Trajectory traj = geodesic_integrate(g, x0, v0, span[0], span[1], static_cast<int>(steps));
  ctx.result.metrics["energy_drift"] =
      *std::max_element(traj.constraint_drift.begin(), traj.constraint_drift.end());
  ctx.result.metrics["exited"] = traj.exited ? 1.0 : 0.0;
  if (ctx.params.value("straight_line", false)) {
    double worst = 0;
    for (int k = 0; k < traj.samples(); ++k) {
      Vec expect = x0 + traj.t[k] * v0;
      worst = std::max(worst, (traj.x[k] - expect).norm());
    }
    ctx.result.metrics["straight_line_max_dev"] = worst;
  }
  if (ctx.params.contains("expected_final")) {
    Vec want = to_vec(ctx.params["expected_final"]);
    Vec got = traj.x.back();
    Vec diff = got - want;
    for (int i = 0; i < diff.size(); ++i) {
      double p = g.chart.period[i];
      if (p > 0) diff(i) = std::remainder(diff(i), p);
    }
    ctx.result.metrics["final_gap"] = diff.norm();
  }
  if (ctx.params.contains("expected_angular_velocity")) {
    // phi is the last coordinate of the orbit charts used here.
    int i = g.dim() - 1;
    double omega = (traj.x.back()(i) - traj.x.front()(i)) / (traj.t.back() - traj.t.front());
    ctx.result.metrics["omega_err"] =
        std::abs(omega - ctx.params["expected_angular_velocity"].get<double>());
  }
  maybe_write_csv(ctx, traj);
}

void task_kk_geodesic(TaskContext& ctx) {
  MetricField g = metric_for(ctx.scenario, ctx.opts);
  LocalConnectionForm conn = connection_for(ctx.scenario, g);
  ParticleState st;
  st.chart = g.chart.id;
  st.x = to_vec(ctx.params.at("x0"));
  st.v = to_vec(ctx.params.at("v0"));
  json span = ctx.params.value("t_span", json::array({0.0, 10.0}));
  long steps = ctx.steps(static_cast<long>(1000 * (span[1].get<double>() - span[0].get<double>())));

  AlgebraElement Q = algebra_from_components(
      conn.algebra(), ctx.params.contains("Q") ? to_vec(ctx.params["Q"])
                                               : Vec(Vec::Zero(conn.algebra().algebra_dim())));
  st.fibre = Vec::Zero(conn.algebra().algebra_dim());
  st.fibre_rate = kk_initial_fibre_rate(conn, 0, st.x, st.v, Q);

  auto [traj, diag] = kk_geodesic(g, conn, 0, st, span[0], span[1], static_cast<int>(steps));
  ctx.result.metrics["charge_drift"] = diag.drift;
  ctx.result.metrics["energy_drift"] =
      *std::max_element(traj.constraint_drift.begin(), traj.constraint_drift.end());

  if (ctx.params.value("compare_lorentz", false)) {
    auto F = em_tensor_from_u1(conn, 0);
    double q_over_m = algebra_components(Q)(0);  // -i Q for u(1)
    Trajectory lor = lorentz_force_integrate(g, F, q_over_m, st.x, st.v, span[0], span[1],
                                             static_cast<int>(steps));
    double gap = 0;
    int n = std::min(traj.samples(), lor.samples());
    for (int k = 0; k < n; ++k) gap = std::max(gap, (traj.x[k] - lor.x[k]).norm());
    ctx.result.metrics["kk_lorentz_gap"] = gap;
    if (ctx.params.contains("expected_radius"))
      ctx.result.metrics["radius_err"] =
          measured_radius_error(lor, ctx.params["expected_radius"].get<double>());
  }
  if (ctx.params.contains("expected_radius"))
    ctx.result.metrics["kk_radius_err"] =
        measured_radius_error(traj, ctx.params["expected_radius"].get<double>());

  if (ctx.params.value("cpt_check", false)) {
    ParticleState rev;
    rev.chart = st.chart;
    rev.x = traj.x.back();
    rev.v = -traj.v.back();
    int d = conn.algebra().algebra_dim();
    Vec xi_end(d), rate_end(d);
    // Recover the fibre end state from the recorded charge.
    AlgebraElement Qend = algebra_from_components(conn.algebra(), Vec(-diag.Q.back()));
    rev.fibre = Vec::Zero(d);
    rev.fibre_rate = kk_initial_fibre_rate(conn, 0, rev.x, rev.v, Qend);
    auto [back, diag2] = kk_geodesic(g, conn, 0, rev, span[0], span[1], static_cast<int>(steps));
    double gap = 0;
    int n = std::min(traj.samples(), back.samples());
    for (int k = 0; k < n; ++k)
      gap = std::max(gap, (back.x[k] - traj.x[traj.samples() - 1 - k]).norm());
    ctx.result.metrics["cpt_gap"] = gap;
  }
  maybe_write_csv(ctx, traj);
}

void task_lorentz(TaskContext& ctx) {
  MetricField g = metric_for(ctx.scenario, ctx.opts);
  Vec x0 = to_vec(ctx.params.at("x0")), v0 = to_vec(ctx.params.at("v0"));
  double qm = ctx.params.value("q_over_m", 1.0);
  json span = ctx.params.value("t_span", json::array({0.0, 10.0}));
  long steps = ctx.steps(static_cast<long>(1000 * (span[1].get<double>() - span[0].get<double>())));

  std::function<Mat(const Vec&)> F;
  if (ctx.scenario.contains("connection")) {
    LocalConnectionForm conn = connection_for(ctx.scenario, g);
    F = em_tensor_from_u1(conn, 0);
  } else if (ctx.params.contains("B") || ctx.params.contains("E")) {
    Eigen::Vector3d B = Eigen::Vector3d::Zero(), E = Eigen::Vector3d::Zero();
    if (ctx.params.contains("B")) B = Eigen::Vector3d(to_vec(ctx.params["B"]));
    if (ctx.params.contains("E")) E = Eigen::Vector3d(to_vec(ctx.params["E"]));
    int dim = g.dim();
    if (dim == 4) {
      EMField em = maxwell_F_from_EB([E](const Vec&) { return E; }, [B](const Vec&) { return B; });
      F = em.F;
    } else {
      // Spatial block of the frame matrix on a Euclidean base.
      Mat f = Mat::Zero(dim, dim);
      if (dim >= 2) {
        f(0, 1) = -B(2);
        f(1, 0) = B(2);
      }
      if (dim >= 3) {
        f(0, 2) = B(1);
        f(2, 0) = -B(1);
        f(1, 2) = -B(0);
        f(2, 1) = B(0);
      }
      F = [f](const Vec&) { return f; };
    }
  } else {
    throw ScenarioError(kExitParse, "lorentz task needs a \"connection\" or params.B/params.E");
  }

  Trajectory traj =
      lorentz_force_integrate(g, F, qm, x0, v0, span[0], span[1], static_cast<int>(steps));
  ctx.result.metrics["energy_drift"] =
      *std::max_element(traj.constraint_drift.begin(), traj.constraint_drift.end());
  if (ctx.params.contains("expected_radius"))
    ctx.result.metrics["radius_err"] =
        measured_radius_error(traj, ctx.params["expected_radius"].get<double>());
  maybe_write_csv(ctx, traj);
}

void task_transport(TaskContext& ctx) {
  MetricField g = metric_for(ctx.scenario, ctx.opts);
  std::string loop_name = ctx.params.value("loop", "square(1.0)");
  Vec x0 = ctx.params.contains("x0") ? to_vec(ctx.params["x0"]) : Vec(Vec::Zero(g.dim()));
  SampledCurve loop;
  try {
    loop = loop_catalog(loop_name, g.chart, x0);
  } catch (const std::out_of_range& e) {
    throw ScenarioError(kExitCatalogMiss, e.what());
  }
  Vec v0r = to_vec(ctx.params.at("vector"));
  CVec v0 = v0r.cast<Complex>();
  int spu = static_cast<int>(ctx.steps(20000));
  LinearTransportOde ode = transport_ode_from_metric(g);
  TransportResult res = parallel_transport_vector(ode, loop, v0, spu);
  ctx.result.metrics["norm_drift"] = res.constraint_drift;
  ctx.result.metrics["step_check"] = res.step_check;
  if (ctx.params.contains("expected_rotation")) {
    Vec base = loop.start();
    Mat gm = metric_at(g, base);
    Eigen::LLT<Mat> llt(gm);
    Mat L = llt.matrixL();
    Vec a = L.transpose() * v0r;
    Vec b = L.transpose() * res.value.real();
    double angle = std::atan2(a(0) * b(1) - a(1) * b(0), a.dot(b));
    ctx.result.metrics["rotation_err"] =
        std::abs(std::abs(angle) - std::abs(ctx.params["expected_rotation"].get<double>()));
  }
}

void task_holonomy(TaskContext& ctx) {
  MetricField g = metric_for(ctx.scenario, ctx.opts);
  LocalConnectionForm conn = connection_for(ctx.scenario, g);
  std::string loop_name = ctx.params.value("loop", "equator");
  int chart = ctx.params.value("chart", 0);
  const Chart& ch = conn.form(chart).chart;
  Vec x0 = ctx.params.contains("x0") ? to_vec(ctx.params["x0"]) : Vec(Vec::Zero(ch.dim));
  SampledCurve loop;
  try {
    loop = loop_catalog(loop_name, ch, x0);
  } catch (const std::out_of_range& e) {
    throw ScenarioError(kExitCatalogMiss, e.what());
  }
  for (auto& s : loop.segments) s.chart = chart;
  int spu = static_cast<int>(ctx.steps(2000));
  GroupElement h = holonomy(conn, loop, spu);
  double log_norm = algebra_norm(lie_log(h));
  ctx.result.metrics["log_norm"] = log_norm;
  ctx.result.metrics["membership_drift"] = conn.algebra().membership_violation(h.mat);
  if (ctx.params.contains("expected_log_norm"))
    ctx.result.metrics["log_norm_err"] =
        std::abs(log_norm - ctx.params["expected_log_norm"].get<double>());
}

void task_validate_identities(TaskContext& ctx) {
  MetricField g = metric_for(ctx.scenario, ctx.opts);
  LocalConnectionForm conn = connection_for(ctx.scenario, g);
  int samples = ctx.params.value("samples", 2000);
  double fd = ctx.fd(1e-4);
  uint64_t seed = ctx.seed() ? ctx.seed() : kCocycleSeed;

  CocycleReport rep = validate_cocycle(conn.cocycle, samples, seed);
  ctx.result.metrics["cocycle_identity"] = rep.max_identity_violation;
  ctx.result.metrics["cocycle_composition"] = rep.max_cocycle_violation;
  ctx.result.metrics["cocycle_seam"] = rep.max_seam_jump;
  ctx.result.metrics["cover_gap"] = rep.uncovered_point_found ? 1.0 : 0.0;

  std::mt19937_64 rng(seed);
  double bianchi_max = 0, overlap_max = 0;
  const int n_charts = conn.n_charts();
  int bianchi_pts = ctx.params.value("bianchi_points", 20);
  for (int k = 0; k < bianchi_pts; ++k) {
    Vec m = conn.cocycle.cover.sample_region(rng);
    for (int a = 0; a < n_charts; ++a) {
      if (!conn.cocycle.cover.chart_contains[a](m)) continue;
      Vec x = conn.cocycle.cover.chart_coords[a](m);
      if (!conn.form(a).chart.contains(x, 10 * fd)) continue;
      bianchi_max = std::max(bianchi_max, bianchi_residual(conn, a, x, fd));
      for (int b = 0; b < n_charts; ++b) {
        if (b == a || !conn.cocycle.cover.in_overlap(a, b, m)) continue;
        overlap_max = std::max(overlap_max, overlap_residual(conn, a, b, m));
      }
    }
  }
  ctx.result.metrics["bianchi_max"] = bianchi_max;
  if (n_charts > 1) ctx.result.metrics["overlap_max"] = overlap_max;
}

void task_field_residuals(TaskContext& ctx) {
  MetricField g = metric_for(ctx.scenario, ctx.opts);
  VolumeData vol{g, 1.0};
  double fd = ctx.fd(1e-4);
  uint64_t seed = ctx.seed();
  std::mt19937_64 rng(seed);
  int points = ctx.params.value("points", 20);
  Vec center = ctx.params.contains("region_center") ? to_vec(ctx.params["region_center"])
                                                    : Vec(Vec::Zero(g.dim()));
  double half = ctx.params.value("region_halfwidth", 0.5);
  std::uniform_real_distribution<double> ud(-half, half);
  auto sample = [&]() {
    Vec x = center;
    for (int i = 0; i < x.size(); ++i) x(i) += ud(rng);
    return x;
  };

  std::string field = ctx.params.value("field", "connection");
  if (field == "coulomb" || field == "plane_wave") {
    EMField em;
    if (field == "coulomb") {
      double q = ctx.params.value("charge", 1.0);
      em = maxwell_F_from_EB(
          [q](const Vec& x) {
            Eigen::Vector3d r(x(1), x(2), x(3));
            double rn = r.norm();
            return Eigen::Vector3d(q * r / (rn * rn * rn));
          },
          nullptr);
    } else {
      em = maxwell_F_from_EB(
          [](const Vec& x) { return Eigen::Vector3d(0.0, std::cos(x(0) - x(1)), 0.0); },
          [](const Vec& x) { return Eigen::Vector3d(0.0, 0.0, std::cos(x(0) - x(1))); });
    }
    double dmax = 0, del_max = 0, tr_max = 0, div_max = 0;
    MetricField gf = g;
    for (int k = 0; k < points; ++k) {
      Vec x = sample();
      auto [d1, d2] = maxwell_residuals(em, vol, x, fd);
      dmax = std::max(dmax, d1);
      del_max = std::max(del_max, d2);
      Mat T = em_stress_energy(em, g, x);
      Mat ginv = metric_inverse_at(g, x);
      tr_max = std::max(tr_max, std::abs((ginv * T).trace()));
      div_max = std::max(div_max, stress_divergence(
                                      gf, [&em, &gf](const Vec& y) { return em_stress_energy(em, gf, y); },
                                      x, fd)
                                      .cwiseAbs().maxCoeff());
    }
    ctx.result.metrics["maxwell_dF_max"] = dmax;
    ctx.result.metrics["maxwell_deltaF_max"] = del_max;
    ctx.result.metrics["stress_trace_max"] = tr_max;
    ctx.result.metrics["stress_div_max"] = div_max;
  } else if (field == "connection") {
    LocalConnectionForm conn = connection_for(ctx.scenario, g);
    AlgebraValuedForm zeroJ = zero_form(conn.algebra(), conn.form(0).chart, 1);
    double ym_max = 0, cc_max = 0;
    for (int k = 0; k < points; ++k) {
      Vec x = sample();
      ym_max = std::max(ym_max, yang_mills_residual(conn, 0, vol, zeroJ, x, fd));
      AlgebraValuedForm f = curvature_form(conn, 0);
      AlgebraValuedForm J = covariant_codifferential(vol, conn, 0, f);
      cc_max = std::max(cc_max, charge_conservation_residual(conn, 0, vol, J, x, fd));
    }
    ctx.result.metrics["ym_residual_max"] = ym_max;
    ctx.result.metrics["charge_conservation_max"] = cc_max;
  } else {
    throw ScenarioError(kExitParse, "unknown field_residuals field \"" + field + "\"");
  }
}

void task_scurv_check(TaskContext& ctx) {
  MetricField g = metric_for(ctx.scenario, ctx.opts);
  LocalConnectionForm conn = connection_for(ctx.scenario, g);
  Vec x = ctx.params.contains("x") ? to_vec(ctx.params["x"]) : Vec(Vec::Zero(g.dim()));
  double fd = ctx.fd(2e-3);
  ScalarCurvatureReport rep = scalar_curvature_decomposition_check(g, conn, 0, x, fd);
  ctx.result.metrics["gap"] = rep.gap;
  ctx.result.metrics["S_h"] = rep.S_h;
  ctx.result.metrics["S_g"] = rep.S_g;
  ctx.result.metrics["coupling"] = rep.coupling;
  if (ctx.params.value("convergence_check", false)) {
    ScalarCurvatureReport coarse = scalar_curvature_decomposition_check(g, conn, 0, x, 2.0 * fd);
    double order = std::log2(std::max(coarse.gap, 1e-300) / std::max(rep.gap, 1e-300));
    ctx.result.metrics["gap_order"] = order;
  }
}

void write_summary(const fs::path& path, const json& j) {
  fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump(2) << '\n';
  }
  fs::rename(tmp, path);
}

json result_to_json(const RunResult& r) {
  json m = json::object();
  for (const auto& [k, v] : r.metrics) m[k] = v;
  json files = json::array();
  for (const auto& f : r.files) files.push_back(f);
  json out{{"scenario", r.scenario}, {"status", r.status}, {"metrics", m}, {"files", files}};
  if (!r.message.empty()) out["message"] = r.message;
  return out;
}

}  // namespace

std::vector<std::string> validate_scenario_file(const std::string& path) {
  std::vector<std::string> problems;
  json j;
  try {
    j = load_json(path);
  } catch (const ScenarioError& e) {
    problems.push_back(e.what());
    return problems;
  }
  check_schema(j, problems);
  return problems;
}

RunResult run_scenario_file(const std::string& path, const RunOptions& opts) {
  RunResult result;
  result.scenario = path;
  json j;
  try {
    j = load_json(path);
    std::vector<std::string> problems;
    check_schema(j, problems);
    if (!problems.empty())
      throw ScenarioError(kExitParse, "schema: " + problems.front());
    result.scenario = j["name"].get<std::string>();

    TaskContext ctx{j, j.value("params", json::object()), opts, result};
    std::string task = j["task"].get<std::string>();
    if (task == "geodesic") task_geodesic(ctx);
    else if (task == "kk_geodesic") task_kk_geodesic(ctx);
    else if (task == "lorentz") task_lorentz(ctx);
    else if (task == "transport") task_transport(ctx);
    else if (task == "holonomy") task_holonomy(ctx);
    else if (task == "validate_identities") task_validate_identities(ctx);
    else if (task == "field_residuals") task_field_residuals(ctx);
    else if (task == "scurv_check") task_scurv_check(ctx);

    // Threshold gate: every named metric must exist and lie at or below its bound.
    result.status = "pass";
    const json thresholds = j.value("thresholds", json::object());
    for (auto it = thresholds.begin(); it != thresholds.end(); ++it) {
      auto found = result.metrics.find(it.key());
      if (found == result.metrics.end())
        throw ScenarioError(kExitParse,
                            "threshold \"" + it.key() + "\" names a metric the task did not produce");
      if (!(found->second <= it.value().get<double>())) {
        result.status = "fail";
        result.exit_code = kExitThreshold;
        result.message += (result.message.empty() ? "" : "; ") + it.key() + " = " +
                          std::to_string(found->second) + " > " +
                          std::to_string(it.value().get<double>());
      }
    }
  } catch (const ScenarioError& e) {
    result.status = "error";
    result.message = e.what();
    result.exit_code = e.code;
  } catch (const std::exception& e) {
    result.status = "error";
    result.message = e.what();
    result.exit_code = kExitNumeric;
  }

  const json outputs = j.is_object() ? j.value("outputs", json::object()) : json::object();
  std::string summary_name = outputs.value("summary_json", result.scenario + ".json");
  if (j.is_object() && j.contains("name")) {
    fs::path p = fs::path(opts.out_dir) / summary_name;
    write_summary(p, result_to_json(result));
    result.files.push_back(p.string());
  }
  return result;
}

SuiteResult run_suite(const std::string& dir, const RunOptions& opts, int jobs) {
  SuiteResult suite;
  std::vector<std::string> files;
  if (fs::is_directory(dir)) {
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.path().extension() == ".json") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    suite.exit_code = kExitParse;
    RunResult r;
    r.scenario = dir;
    r.status = "error";
    r.message = "no scenarios";
    suite.results.push_back(r);
    return suite;
  }

  suite.results.resize(files.size());
  int nj = std::max(1, jobs);
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= files.size()) break;
      suite.results[i] = run_scenario_file(files[i], opts);
    }
  };
  if (nj == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nj; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  json arr = json::array();
  for (const auto& r : suite.results) {
    arr.push_back(result_to_json(r));
    suite.exit_code = std::max(suite.exit_code, r.exit_code);
  }
  json summary{{"suite", dir}, {"results", arr}};
  write_summary(fs::path(opts.out_dir) / "suite_summary.json", summary);
  return suite;
}

}  // namespace gaugekit
