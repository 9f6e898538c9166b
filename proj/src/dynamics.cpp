#include "gaugekit/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace gaugekit {

PathSamples Trajectory::base_path() const {
  PathSamples p;
  p.t = Eigen::Map<const Vec>(t.data(), static_cast<int>(t.size()));
  p.x = x;
  return p;
}

namespace {

struct SprayState {
  Vec x, v;
};

// RK4 on the geodesic spray with per-step recording.
Trajectory integrate_spray(const MetricField& g, const Vec& x0, const Vec& v0, double t0,
                           double t1, int steps, int record_stride) {
  const int n = g.dim();
  auto acc = [&](const Vec& x, const Vec& v) {
    Tensor3 gam = levi_civita_christoffel(g, x).gamma;
    Vec a = Vec::Zero(n);
    for (int k = 0; k < n; ++k) {
      double s = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += gam(k, i, j) * v(i) * v(j);
      a(k) = -s;
    }
    return a;
  };

  Trajectory traj;
  double h = (t1 - t0) / steps;
  SprayState s{x0, v0};
  Mat gm = metric_at(g, x0);
  double e0 = 0.5 * v0.dot(gm * v0);
  auto record = [&](double t) {
    traj.t.push_back(t);
    traj.chart.push_back(g.chart.id);
    traj.x.push_back(s.x);
    traj.v.push_back(s.v);
    Mat gmat = metric_at(g, s.x);
    double e = 0.5 * s.v.dot(gmat * s.v);
    traj.energy.push_back(e);
    traj.constraint_drift.push_back(std::abs(e - e0));
  };
  record(t0);
  for (int k = 0; k < steps; ++k) {
    double margin = 3.0 * g.fd_step;
    if (!g.chart.contains(s.x, margin)) {
      traj.exited = true;
      break;
    }
    Vec k1x = s.v, k1v = acc(s.x, s.v);
    Vec k2x = s.v + 0.5 * h * k1v, k2v = acc(s.x + 0.5 * h * k1x, s.v + 0.5 * h * k1v);
    Vec k3x = s.v + 0.5 * h * k2v, k3v = acc(s.x + 0.5 * h * k2x, s.v + 0.5 * h * k2v);
    Vec k4x = s.v + h * k3v, k4v = acc(s.x + h * k3x, s.v + h * k3v);
    s.x += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    s.v += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if (!s.x.allFinite() || !s.v.allFinite()) {
      traj.exited = true;
      break;
    }
    if ((k + 1) % record_stride == 0 || k == steps - 1) record(t0 + (k + 1) * h);
  }
  return traj;
}

}  // namespace

Trajectory geodesic_integrate(const MetricField& g, const Vec& x0, const Vec& v0, double t0,
                              double t1, int steps) {
  if (!x0.allFinite() || !v0.allFinite()) throw std::domain_error("geodesic: non-finite initial data");
  g.chart.require_interior(x0, 0.0);
  return integrate_spray(g, x0, v0, t0, t1, steps, 1);
}

namespace {

// theta_a(xi) = sum_{m>=0} (-ad_xi)^m (E_a) / (m+1)!  (left Maurer-Cartan
// frame of exp coordinates).
CMat mc_frame_column(const CMat& xi_hat, const CMat& Ea) {
  CMat term = Ea;
  CMat acc = term;  // m = 0 term / 1!
  double fact = 1.0;
  for (int m = 1; m <= 60; ++m) {
    term = -(xi_hat * term - term * xi_hat);
    fact *= (m + 1);
    CMat add = term / fact;
    acc += add;
    if (add.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  return acc;
}

struct KKFrame {
  Mat theta;      // Theta_{ba}: components of theta_a in the basis
  CMat group;     // exp(xi)
  CMat group_inv;
};

KKFrame kk_frame(const LieGroupSpec& spec, const Vec& xi) {
  const auto basis = spec.algebra_basis();
  const int d = static_cast<int>(basis.size());
  CMat xh = CMat::Zero(spec.n, spec.n);
  for (int a = 0; a < d; ++a) xh += xi(a) * basis[a];
  KKFrame fr;
  fr.group = lie_exp(AlgebraElement{spec, xh}).mat;
  Eigen::FullPivLU<CMat> lu(fr.group);
  fr.group_inv = lu.inverse();
  fr.theta = Mat::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    CMat col = mc_frame_column(xh, basis[a]);
    Vec comp = algebra_components(AlgebraElement{spec, col});
    fr.theta.col(a) = comp;
  }
  return fr;
}

}  // namespace

Mat kk_metric_eval(const MetricField& g, const LocalConnectionForm& conn, int chart, const Vec& x,
                   const Vec& xi) {
  const LieGroupSpec spec = conn.algebra();
  const int n = g.dim();
  const int d = spec.algebra_dim();
  KKFrame fr = kk_frame(spec, xi);

  FormValue av = conn.form(chart).at(x);
  Mat alpha = Mat::Zero(d, n);  // alpha_{ai} = components of Ad(g^{-1}) A_i
  for (int i = 0; i < n; ++i) {
    CMat adj = fr.group_inv * av.comps[i] * fr.group;
    alpha.col(i) = algebra_components(AlgebraElement{spec, adj});
  }

  Mat h = Mat::Zero(n + d, n + d);
  h.topLeftCorner(n, n) = metric_at(g, x) + alpha.transpose() * alpha;
  h.topRightCorner(n, d) = alpha.transpose() * fr.theta;
  h.bottomLeftCorner(d, n) = h.topRightCorner(n, d).transpose();
  h.bottomRightCorner(d, d) = fr.theta.transpose() * fr.theta;
  if (condition_number(h) >= 1e12)
    throw std::domain_error("kk_metric: degenerate assembled metric");
  return h;
}

MetricField kk_total_metric(const MetricField& g, const LocalConnectionForm& conn, int chart,
                            double fibre_box) {
  const int n = g.dim();
  const int d = conn.algebra().algebra_dim();
  MetricField h;
  Vec lo(n + d), hi(n + d);
  lo.head(n) = g.chart.lo;
  hi.head(n) = g.chart.hi;
  // U(1) exponential coordinates never degenerate; non-abelian exp charts
  // stay inside a safe box.
  double fb = (conn.algebra().kind == GroupKind::U1) ? 1e6 : fibre_box;
  lo.tail(d).setConstant(-fb);
  hi.tail(d).setConstant(fb);
  h.chart = Chart::box(g.chart.id + "*G", lo, hi);
  h.chart.period = g.chart.period;
  h.chart.period.resize(n + d, 0.0);
  h.sig_pos = g.sig_pos + d;
  h.sig_neg = g.sig_neg;
  h.fd_step = g.fd_step;
  MetricField base = g;
  LocalConnectionForm c = conn;
  h.eval = [base, c, chart, n, d](const Vec& y) {
    return kk_metric_eval(base, c, chart, y.head(n), y.tail(d));
  };
  return h;
}

AlgebraElement kk_charge(const LocalConnectionForm& conn, int chart, const ParticleState& s) {
  const LieGroupSpec spec = conn.algebra();
  const int d = spec.algebra_dim();
  Vec xi = s.fibre.size() ? s.fibre : Vec::Zero(d);
  Vec rate = s.fibre_rate.size() ? s.fibre_rate : Vec::Zero(d);
  KKFrame fr = kk_frame(spec, xi);
  AlgebraElement a = conn.contract(chart, s.x, s.v);
  CMat adj = fr.group_inv * a.mat * fr.group;
  Vec comp = algebra_components(AlgebraElement{spec, adj}) + fr.theta * rate;
  return algebra_from_components(spec, comp);
}

Vec kk_initial_fibre_rate(const LocalConnectionForm& conn, int chart, const Vec& x, const Vec& v,
                          const AlgebraElement& Q) {
  const LieGroupSpec spec = conn.algebra();
  KKFrame fr = kk_frame(spec, Vec::Zero(spec.algebra_dim()));
  AlgebraElement a = conn.contract(chart, x, v);
  Vec rhs = algebra_components(Q) - algebra_components(a);
  return fr.theta.fullPivLu().solve(rhs);
}

std::pair<Trajectory, ChargeDiagnostics> kk_geodesic(const MetricField& g,
                                                     const LocalConnectionForm& conn, int chart,
                                                     const ParticleState& state, double t0,
                                                     double t1, int steps) {
  const LieGroupSpec spec = conn.algebra();
  const int n = g.dim();
  const int d = spec.algebra_dim();
  MetricField h = kk_total_metric(g, conn, chart);

  Vec y0(n + d), w0(n + d);
  y0.head(n) = state.x;
  y0.tail(d) = state.fibre.size() ? state.fibre : Vec::Zero(d);
  w0.head(n) = state.v;
  w0.tail(d) = state.fibre_rate.size() ? state.fibre_rate : Vec::Zero(d);

  Trajectory total = integrate_spray(h, y0, w0, t0, t1, steps, 1);

  Trajectory traj;
  ChargeDiagnostics diag;
  traj.exited = total.exited;
  Vec q0;
  for (int k = 0; k < total.samples(); ++k) {
    ParticleState s;
    s.x = total.x[k].head(n);
    s.v = total.v[k].head(n);
    s.fibre = total.x[k].tail(d);
    s.fibre_rate = total.v[k].tail(d);
    Vec q = algebra_components(kk_charge(conn, chart, s));
    if (k == 0) q0 = q;
    diag.Q.push_back(q);
    diag.drift = std::max(diag.drift, (q - q0).norm());

    traj.t.push_back(total.t[k]);
    traj.chart.push_back(g.chart.id);
    traj.x.push_back(s.x);
    traj.v.push_back(s.v);
    traj.Q.push_back(q);
    traj.energy.push_back(total.energy[k]);
    traj.constraint_drift.push_back(total.constraint_drift[k]);
  }
  return {traj, diag};
}

Trajectory lorentz_force_integrate(const MetricField& g, const std::function<Mat(const Vec&)>& F,
                                   double q_over_m, const Vec& x0, const Vec& v0, double t0,
                                   double t1, int steps) {
  const int n = g.dim();
  g.chart.require_interior(x0, 0.0);
  auto acc = [&](const Vec& x, const Vec& v) {
    Tensor3 gam = levi_civita_christoffel(g, x).gamma;
    Mat ginv = metric_inverse_at(g, x);
    Mat f = F(x);
    Vec a = Vec::Zero(n);
    for (int k = 0; k < n; ++k) {
      double s = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += gam(k, i, j) * v(i) * v(j);
      a(k) = -s;
    }
    // force_k = -(q/m) F_{kj} v^j, raised with g^{-1}; slot pairing
    // calibrated against the Kaluza-Klein projection (see header).
    Vec fk = Vec::Zero(n);
    for (int k = 0; k < n; ++k) {
      double s = 0;
      for (int j = 0; j < n; ++j) s += f(k, j) * v(j);
      fk(k) = -q_over_m * s;
    }
    a += ginv * fk;
    return a;
  };

  Trajectory traj;
  double h = (t1 - t0) / steps;
  Vec x = x0, v = v0;
  Mat gm = metric_at(g, x0);
  double e0 = 0.5 * v0.dot(gm * v0);
  auto record = [&](double t) {
    traj.t.push_back(t);
    traj.chart.push_back(g.chart.id);
    traj.x.push_back(x);
    traj.v.push_back(v);
    Mat gmat = metric_at(g, x);
    double e = 0.5 * v.dot(gmat * v);
    traj.energy.push_back(e);
    traj.constraint_drift.push_back(std::abs(e - e0));
  };
  record(t0);
  for (int k = 0; k < steps; ++k) {
    if (!g.chart.contains(x, 3.0 * g.fd_step)) {
      traj.exited = true;
      break;
    }
    Vec k1x = v, k1v = acc(x, v);
    Vec k2x = v + 0.5 * h * k1v, k2v = acc(x + 0.5 * h * k1x, v + 0.5 * h * k1v);
    Vec k3x = v + 0.5 * h * k2v, k3v = acc(x + 0.5 * h * k2x, v + 0.5 * h * k2v);
    Vec k4x = v + h * k3v, k4v = acc(x + h * k3x, v + h * k3v);
    x += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    v += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    record(t0 + (k + 1) * h);
  }
  return traj;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("csv: cannot open '" + tmp + "'");
    const int n = traj.x.empty() ? 0 : static_cast<int>(traj.x.front().size());
    const int nq = traj.Q.empty() ? 0 : static_cast<int>(traj.Q.front().size());
    out << "t,chart";
    for (int i = 0; i < n; ++i) out << ",x" << i;
    for (int i = 0; i < n; ++i) out << ",v" << i;
    for (int i = 0; i < nq; ++i) out << ",Q" << i;
    out << ",energy,constraint_drift\n";
    char buf[64];
    auto fmt = [&buf](double v) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      return std::string(buf);
    };
    for (int k = 0; k < traj.samples(); ++k) {
      out << fmt(traj.t[k]) << ',' << traj.chart[k];
      for (int i = 0; i < n; ++i) out << ',' << fmt(traj.x[k](i));
      for (int i = 0; i < n; ++i) out << ',' << fmt(traj.v[k](i));
      for (int i = 0; i < nq; ++i) out << ',' << fmt(traj.Q[k](i));
      out << ',' << fmt(traj.energy[k]) << ',' << fmt(traj.constraint_drift[k]) << '\n';
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("csv: atomic rename failed for '" + path + "'");
}

}  // namespace gaugekit
