#include "gaugekit/transport.hpp"

#include <cmath>
#include <memory>
#include <sstream>

namespace gaugekit {

Vec CurveSegment::velocity(double t) const {
  if (vel) return vel(t);
  double h = 1e-6 * std::max(1.0, t1 - t0);
  // Fourth-order interior stencil, clamped near segment ends.
  double lo = t0, hi = t1;
  if (t - 2 * h < lo) t = lo + 2 * h;
  if (t + 2 * h > hi) t = hi - 2 * h;
  return (-pos(t + 2 * h) + 8.0 * pos(t + h) - 8.0 * pos(t - h) + pos(t - 2 * h)) / (12.0 * h);
}

PathSamples SampledCurve::sample_segment(int seg, int n) const {
  const CurveSegment& s = segments.at(seg);
  PathSamples p;
  p.t = Vec::LinSpaced(n, s.t0, s.t1);
  p.x.resize(n);
  for (int i = 0; i < n; ++i) p.x[i] = s.pos(p.t(i));
  return p;
}

CurveSegment segment_from_samples(int chart, const Vec& t, const std::vector<Vec>& points) {
  if (t.size() < 4 || static_cast<int>(points.size()) != t.size())
    throw std::invalid_argument("segment_from_samples: need >= 4 aligned samples");
  const int m = static_cast<int>(points.size());
  const double h = t(1) - t(0);
  // Slopes by fourth-order differences (one-sided at the ends), cubic
  // Hermite evaluation between nodes.
  auto slopes = std::make_shared<std::vector<Vec>>(m);
  for (int i = 0; i < m; ++i) {
    if (i >= 2 && i + 2 < m)
      (*slopes)[i] = (-points[i + 2] + 8.0 * points[i + 1] - 8.0 * points[i - 1] + points[i - 2]) / (12.0 * h);
    else if (i == 0)
      (*slopes)[i] = (-3.0 * points[0] + 4.0 * points[1] - points[2]) / (2.0 * h);
    else if (i == m - 1)
      (*slopes)[i] = (3.0 * points[m - 1] - 4.0 * points[m - 2] + points[m - 3]) / (2.0 * h);
    else
      (*slopes)[i] = (points[i + 1] - points[i - 1]) / (2.0 * h);
  }
  auto pts = std::make_shared<std::vector<Vec>>(points);
  double t0 = t(0), t1 = t(m - 1);
  CurveSegment seg;
  seg.chart = chart;
  seg.t0 = t0;
  seg.t1 = t1;
  seg.pos = [pts, slopes, t0, h, m](double tt) {
    int i = std::clamp(static_cast<int>((tt - t0) / h), 0, m - 2);
    double u = (tt - t0 - i * h) / h;
    double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
    double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
    return Vec(h00 * (*pts)[i] + h10 * h * (*slopes)[i] + h01 * (*pts)[i + 1] +
               h11 * h * (*slopes)[i + 1]);
  };
  return seg;
}

SampledCurve single_segment_curve(int chart, double t0, double t1, std::function<Vec(double)> pos,
                                  std::function<Vec(double)> vel) {
  CurveSegment s;
  s.chart = chart;
  s.t0 = t0;
  s.t1 = t1;
  s.pos = std::move(pos);
  s.vel = std::move(vel);
  return SampledCurve{{s}};
}

SampledCurve reversed(const SampledCurve& c) {
  SampledCurve out;
  double tend = c.t_end(), tstart = c.t_start();
  for (auto it = c.segments.rbegin(); it != c.segments.rend(); ++it) {
    CurveSegment s = *it;
    CurveSegment r;
    r.chart = s.chart;
    r.t0 = tstart + (tend - s.t1);
    r.t1 = tstart + (tend - s.t0);
    double mirror = s.t0 + s.t1;
    auto pos = s.pos;
    auto vel = s.vel;
    double off = tstart + tend;
    r.pos = [pos, off](double t) { return pos(off - t); };
    if (vel) r.vel = [vel, off](double t) { return Vec(-vel(off - t)); };
    (void)mirror;
    out.segments.push_back(r);
  }
  return out;
}

SampledCurve concatenated(const SampledCurve& first, const SampledCurve& second) {
  SampledCurve out = first;
  double shift = first.t_end() - second.t_start();
  for (CurveSegment s : second.segments) {
    CurveSegment t = s;
    t.t0 = s.t0 + shift;
    t.t1 = s.t1 + shift;
    auto pos = s.pos;
    auto vel = s.vel;
    t.pos = [pos, shift](double tt) { return pos(tt - shift); };
    if (vel) t.vel = [vel, shift](double tt) { return vel(tt - shift); };
    out.segments.push_back(t);
  }
  return out;
}

namespace {

std::vector<double> loop_args(const std::string& name) {
  size_t open = name.find('(');
  if (open == std::string::npos) return {};
  size_t close = name.rfind(')');
  std::vector<double> args;
  std::stringstream ss(name.substr(open + 1, close - open - 1));
  std::string tok;
  while (std::getline(ss, tok, ',')) args.push_back(std::stod(tok));
  return args;
}

SampledCurve rectangle_loop(const Chart&, const Vec& corner, int i, int j, double si, double sj) {
  Vec a = corner;
  Vec b = corner, c = corner, d = corner;
  b(i) += si;
  c(i) += si;
  c(j) += sj;
  d(j) += sj;
  auto edge = [](const Vec& p, const Vec& q, int chart) {
    Vec dir = q - p;
    return CurveSegment{chart, 0.0, 1.0, [p, dir](double t) { return Vec(p + t * dir); },
                        [dir](double) { return dir; }};
  };
  SampledCurve out;
  out.segments = {edge(a, b, 0), edge(b, c, 0), edge(c, d, 0), edge(d, a, 0)};
  for (int s = 0; s < 4; ++s) {
    out.segments[s].t0 = s;
    out.segments[s].t1 = s + 1;
    auto pos = out.segments[s].pos;
    auto vel = out.segments[s].vel;
    double off = s;
    out.segments[s].pos = [pos, off](double t) { return pos(t - off); };
    out.segments[s].vel = [vel, off](double t) { return vel(t - off); };
  }
  return out;
}

}  // namespace

SampledCurve loop_catalog(const std::string& name, const Chart& chart, const Vec& x0) {
  auto args = loop_args(name);
  std::string id = name.substr(0, name.find('('));

  if (id == "square") {
    if (args.size() != 1) throw std::invalid_argument("square(s): expected one parameter");
    return rectangle_loop(chart, x0, 0, 1, args[0], args[0]);
  }
  if (id == "rect") {
    if (args.size() != 4) throw std::invalid_argument("rect(i,j,s,t): expected four parameters");
    int i = static_cast<int>(args[0]), j = static_cast<int>(args[1]);
    Vec corner = x0;
    corner(i) -= 0.5 * args[2];
    corner(j) -= 0.5 * args[3];
    return rectangle_loop(chart, corner, i, j, args[2], args[3]);
  }
  if (id == "equator") {
    return single_segment_curve(
        0, 0.0, 1.0,
        [](double t) {
          Vec x(2);
          x << M_PI / 2.0, 2.0 * M_PI * t;
          return x;
        },
        [](double) {
          Vec v(2);
          v << 0.0, 2.0 * M_PI;
          return v;
        });
  }
  if (id == "octant_triangle") {
    // Equator arc, meridian up, polar arc at theta = eps, meridian down.
    // The polar clip keeps the curve away from the chart singularity; the
    // enclosed area (and so the holonomy angle) is (pi/2) cos(eps).
    const double eps = 5e-3;
    auto line = [](Vec a, Vec b) {
      Vec dir = b - a;
      return std::pair<std::function<Vec(double)>, std::function<Vec(double)>>(
          [a, dir](double t) { return Vec(a + t * dir); }, [dir](double) { return dir; });
    };
    Vec p0(2), p1(2), p2(2), p3(2);
    p0 << M_PI / 2.0, 0.0;
    p1 << M_PI / 2.0, M_PI / 2.0;
    p2 << eps, M_PI / 2.0;
    p3 << eps, 0.0;
    SampledCurve out;
    auto mk = [&](Vec a, Vec b, double t0) {
      auto pv = line(a, b);
      CurveSegment s;
      s.chart = 0;
      s.t0 = t0;
      s.t1 = t0 + 1.0;
      auto pos = pv.first;
      auto vel = pv.second;
      s.pos = [pos, t0](double t) { return pos(t - t0); };
      s.vel = [vel, t0](double t) { return vel(t - t0); };
      return s;
    };
    out.segments = {mk(p0, p1, 0.0), mk(p1, p2, 1.0), mk(p2, p3, 2.0), mk(p3, p0, 3.0)};
    return out;
  }
  throw std::out_of_range("loop catalog: unknown loop '" + name + "'");
}

bool loop_catalog_has(const std::string& name) {
  std::string id = name.substr(0, name.find('('));
  return id == "square" || id == "rect" || id == "equator" || id == "octant_triangle";
}

LinearTransportOde transport_ode_from_metric(const MetricField& g) {
  LinearTransportOde ode;
  ode.fibre_dim = g.dim();
  MetricField gc = g;
  ode.coeff = [gc](int, const Vec& x, const Vec& xdot) {
    Tensor3 gam = levi_civita_christoffel(gc, x).gamma;
    const int n = gc.dim();
    CMat m = CMat::Zero(n, n);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int i = 0; i < n; ++i) s += gam(k, i, j) * xdot(i);
        m(k, j) = s;
      }
    return m;
  };
  ode.to_global = [](int, const Vec& x) { return x; };
  return ode;
}

LinearTransportOde transport_ode_from_connection(const LocalConnectionForm& conn) {
  LinearTransportOde ode;
  ode.fibre_dim = conn.algebra().n;
  LocalConnectionForm c = conn;
  ode.coeff = [c](int chart, const Vec& x, const Vec& xdot) {
    return c.contract(chart, x, xdot).mat;
  };
  Cocycle coc = conn.cocycle;
  ode.switch_map = [coc](int from, int to, const Vec& global) {
    return coc.g(to, from, global).mat;
  };
  ode.to_global = [coc](int chart, const Vec& x) { return coc.cover.chart_to_global[chart](x); };
  return ode;
}

namespace {

// One transport pass over the whole curve with n steps per unit parameter.
CMat transport_matrix_pass(const LinearTransportOde& ode, const SampledCurve& curve,
                           int steps_per_unit, int reproject_every,
                           const std::function<CMat(const CMat&)>& reproject_fn, int* steps_out) {
  CMat u = CMat::Identity(ode.fibre_dim, ode.fibre_dim);
  int total_steps = 0;
  for (size_t si = 0; si < curve.segments.size(); ++si) {
    const CurveSegment& seg = curve.segments[si];
    if (si > 0) {
      const CurveSegment& prev = curve.segments[si - 1];
      if (prev.chart != seg.chart) {
        if (!ode.switch_map) throw std::domain_error("transport: chart switch without switch map");
        Vec global = ode.to_global(prev.chart, prev.pos(prev.t1));
        Vec global2 = ode.to_global(seg.chart, seg.pos(seg.t0));
        if ((global - global2).norm() > 1e-9)
          throw std::domain_error("transport: segments disagree at switch time");
        u = ode.switch_map(prev.chart, seg.chart, global) * u;
      } else if ((prev.pos(prev.t1) - seg.pos(seg.t0)).norm() > 1e-9) {
        throw std::domain_error("transport: segments disagree at switch time");
      }
    }
    double len = seg.t1 - seg.t0;
    int n = std::max(2, static_cast<int>(std::ceil(steps_per_unit * len)));
    double h = len / n;
    auto rhs = [&](double t, const CMat& m) {
      Vec x = seg.pos(t);
      Vec v = seg.velocity(t);
      return CMat(-ode.coeff(seg.chart, x, v) * m);
    };
    for (int k = 0; k < n; ++k) {
      double t = seg.t0 + k * h;
      CMat k1 = rhs(t, u);
      CMat k2 = rhs(t + 0.5 * h, u + 0.5 * h * k1);
      CMat k3 = rhs(t + 0.5 * h, u + 0.5 * h * k2);
      CMat k4 = rhs(t + h, u + h * k3);
      u = u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      ++total_steps;
      if (reproject_fn && reproject_every > 0 && total_steps % reproject_every == 0)
        u = reproject_fn(u);
    }
  }
  if (steps_out) *steps_out = total_steps;
  return u;
}

}  // namespace

TransportResult parallel_transport_vector(const LinearTransportOde& ode, const SampledCurve& curve,
                                          const CVec& v0, int steps_per_unit) {
  if (!v0.allFinite()) throw std::domain_error("transport: non-finite initial value");
  TransportResult res;
  int steps = 0;
  CMat u1 = transport_matrix_pass(ode, curve, steps_per_unit, 0, nullptr, &steps);
  CMat u2 = transport_matrix_pass(ode, curve, 2 * steps_per_unit, 0, nullptr, nullptr);
  res.value = u2 * v0;
  res.step_check = ((u1 - u2) * v0).norm();
  res.flagged = res.step_check >= 1e-7;
  res.steps = steps * 2;
  res.constraint_drift = std::abs(res.value.norm() - v0.norm());
  return res;
}

TransportResult horizontal_lift_group(const LocalConnectionForm& conn, const SampledCurve& curve,
                                      const GroupElement& g0, int steps_per_unit) {
  LinearTransportOde ode = transport_ode_from_connection(conn);
  auto spec = conn.algebra();
  auto reproj = [spec](const CMat& m) { return reproject(GroupElement{spec, m}).mat; };
  TransportResult res;
  int steps = 0;
  CMat u1 = transport_matrix_pass(ode, curve, steps_per_unit, 50, reproj, &steps);
  CMat u2 = transport_matrix_pass(ode, curve, 2 * steps_per_unit, 50, reproj, nullptr);
  res.element = GroupElement{spec, CMat(u2 * g0.mat)};
  res.step_check = operator_norm(CMat(u1 - u2));
  res.flagged = res.step_check >= 1e-7;
  res.steps = steps * 2;
  res.constraint_drift = spec.membership_violation(res.element.mat);
  return res;
}

GroupElement holonomy(const LocalConnectionForm& conn, const SampledCurve& loop,
                      int steps_per_unit) {
  const CurveSegment& first = loop.segments.front();
  const CurveSegment& last = loop.segments.back();
  Vec a = conn.cocycle.cover.chart_to_global[first.chart](first.pos(first.t0));
  Vec b = conn.cocycle.cover.chart_to_global[last.chart](last.pos(last.t1));
  if ((a - b).norm() > 1e-10) throw std::domain_error("holonomy: curve is not closed");
  GroupElement id{conn.algebra(), conn.algebra().identity()};
  TransportResult r = horizontal_lift_group(conn, loop, id, steps_per_unit);
  // If the loop closes in a different chart, return to the start chart frame.
  if (first.chart != last.chart) {
    CMat sw = conn.cocycle.g(first.chart, last.chart, b).mat;
    return GroupElement{conn.algebra(), CMat(sw * r.element.mat)};
  }
  return r.element;
}

AlgebraElement infinitesimal_holonomy(const LocalConnectionForm& conn, int chart, const Vec& x,
                                      int i, int j, double s, double t, int steps_per_unit) {
  const Chart& ch = conn.form(chart).chart;
  Vec corner = x;
  corner(i) -= 0.5 * s;
  corner(j) -= 0.5 * t;
  if (!ch.contains(corner) ) throw std::domain_error("infinitesimal_holonomy: rectangle outside chart");
  SampledCurve rect = loop_catalog("rect(" + std::to_string(i) + "," + std::to_string(j) + "," +
                                       std::to_string(s) + "," + std::to_string(t) + ")",
                                   ch, x);
  for (auto& seg : rect.segments) seg.chart = chart;
  GroupElement h = holonomy(conn, rect, steps_per_unit);
  AlgebraElement lg = lie_log(h);
  return (1.0 / (s * t)) * lg;
}

SpanCheckReport ambrose_singer_span_check(const LocalConnectionForm& conn, int chart,
                                          const std::vector<SampledCurve>& loops,
                                          const std::vector<Vec>& sample_points, double rank_tol,
                                          int steps_per_unit) {
  const int n = conn.algebra().n;
  const int vec_len = 2 * n * n;
  auto vectorize = [n, vec_len](const CMat& m) {
    Vec v(vec_len);
    int p = 0;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        v(p++) = m(r, c).real();
        v(p++) = m(r, c).imag();
      }
    return v;
  };

  SpanCheckReport rep;
  std::vector<Vec> hvecs, fvecs;
  for (const auto& loop : loops) {
    try {
      GroupElement h = holonomy(conn, loop, steps_per_unit);
      hvecs.push_back(vectorize(lie_log(h).mat));
    } catch (const std::domain_error&) {
      ++rep.skipped_loops;
    }
  }
  AlgebraValuedForm f = curvature_form(conn, chart);
  for (const Vec& x : sample_points) {
    FormValue fv = f.at(x);
    for (const auto& c : fv.comps) fvecs.push_back(vectorize(c));
  }

  auto rank_of = [&](const std::vector<Vec>& vs) {
    if (vs.empty()) return 0;
    Mat m(static_cast<int>(vs.size()), vec_len);
    for (size_t r = 0; r < vs.size(); ++r) m.row(static_cast<int>(r)) = vs[r].transpose();
    auto sv = m.jacobiSvd().singularValues();
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k)
      if (sv(k) > rank_tol) ++rank;
    return rank;
  };

  rep.rank_holonomy = rank_of(hvecs);
  rep.rank_curvature = rank_of(fvecs);
  std::vector<Vec> joint = fvecs;
  joint.insert(joint.end(), hvecs.begin(), hvecs.end());
  rep.included = (rank_of(joint) == rep.rank_curvature);
  return rep;
}

CVec covariant_derivative_section(const LocalConnectionForm& conn, int chart,
                                  const std::function<CVec(const Vec&)>& sigma, const Vec& X,
                                  const Vec& m, double fd_step) {
  double scale = std::max(1.0, X.norm());
  double h = fd_step / scale;
  CVec dp = sigma(m + h * X);
  CVec dm = sigma(m - h * X);
  CVec dsig = (dp - dm) / (2.0 * h);
  return dsig + conn.contract(chart, m, X).mat * sigma(m);
}

CVec affine_curvature_commutator(const LocalConnectionForm& conn, int chart,
                                 const std::function<CVec(const Vec&)>& sigma, int i, int j,
                                 const Vec& m, double fd_step) {
  const int dim = conn.form(chart).dim();
  auto unit = [dim](int k) {
    Vec e = Vec::Zero(dim);
    e(k) = 1.0;
    return e;
  };
  auto nabla = [&](int dir, const std::function<CVec(const Vec&)>& s) {
    return [&conn, chart, dir, s, dim, fd_step, unit](const Vec& y) {
      return covariant_derivative_section(conn, chart, s, unit(dir), y, fd_step);
    };
  };
  auto nj = nabla(j, sigma);
  auto ni = nabla(i, sigma);
  CVec a = covariant_derivative_section(conn, chart, nj, unit(i), m, fd_step);
  CVec b = covariant_derivative_section(conn, chart, ni, unit(j), m, fd_step);
  return a - b;
}

}  // namespace gaugekit
