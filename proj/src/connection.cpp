#include "gaugekit/connection.hpp"

#include <cmath>
#include <sstream>

namespace gaugekit {

AlgebraElement LocalConnectionForm::contract(int chart, const Vec& x, const Vec& v) const {
  const AlgebraValuedForm& a = form(chart);
  FormValue val = a.at(x);
  CMat acc = CMat::Zero(algebra().n, algebra().n);
  for (int i = 0; i < a.dim(); ++i) acc += v(i) * val.comps[i];
  return {algebra(), acc};
}

AlgebraValuedForm curvature_form(const LocalConnectionForm& conn, int chart) {
  const AlgebraValuedForm& a = conn.form(chart);
  AlgebraValuedForm f;
  f.algebra = a.algebra;
  f.chart = a.chart;
  f.deg = 2;
  f.fd_step = a.fd_step;
  AlgebraValuedForm acopy = a;
  f.eval = [acopy](const Vec& x) {
    FormValue da = exterior_derivative_value(acopy, x);
    FormValue av = acopy.at(x);
    FormValue br = graded_bracket_value(av, av);
    return da + 0.5 * br;
  };
  return f;
}

namespace {

// Fourth-order central difference of the transition map along chart-a
// coordinate direction i, evaluated through the local -> global lift.
CMat transition_partial(const Cocycle& c, int a, int b, const Vec& x_local, int dir, double h) {
  auto lift = c.cover.chart_to_global[a];
  auto gval = [&](double offset) {
    Vec x = x_local;
    x(dir) += offset;
    return c.g(a, b, lift(x)).mat;
  };
  return (-gval(2 * h) + 8.0 * gval(h) - 8.0 * gval(-h) + gval(-2 * h)) / (12.0 * h);
}

}  // namespace

double overlap_residual(const LocalConnectionForm& conn, int chart_a, int chart_b,
                        const Vec& global) {
  const Cocycle& c = conn.cocycle;
  if (!c.cover.in_overlap(chart_a, chart_b, global))
    throw std::domain_error("overlap_residual: point outside chart overlap");
  Vec xa = c.cover.chart_coords[chart_a](global);
  Vec xb = c.cover.chart_coords[chart_b](global);
  FormValue Aa = conn.form(chart_a).at(xa);
  FormValue Ab = conn.form(chart_b).at(xb);

  CMat gab = c.g(chart_a, chart_b, global).mat;
  Eigen::FullPivLU<CMat> lu(gab);
  CMat ginv = lu.inverse();

  const int n = conn.form(chart_a).dim();
  const double h = 1e-3;
  double s = 0;
  for (int i = 0; i < n; ++i) {
    CMat dg = transition_partial(c, chart_a, chart_b, xa, i, h);
    CMat expect = ginv * Aa.comps[i] * gab + ginv * dg;
    AlgebraElement diff{conn.algebra(), CMat(Ab.comps[i] - expect)};
    double d = algebra_norm(diff);
    s += d * d;
  }
  return std::sqrt(s);
}

AlgebraValuedForm covariant_differential(const LocalConnectionForm& conn, int chart,
                                         const AlgebraValuedForm& tau) {
  const AlgebraValuedForm& a = conn.form(chart);
  AlgebraValuedForm out;
  out.algebra = tau.algebra;
  out.chart = tau.chart;
  out.deg = tau.deg + 1;
  out.fd_step = tau.fd_step;
  AlgebraValuedForm acopy = a, tcopy = tau;
  out.eval = [acopy, tcopy](const Vec& x) {
    FormValue dt = exterior_derivative_value(tcopy, x);
    if (tcopy.deg + 1 > tcopy.dim()) return dt;  // zero form beyond top degree
    FormValue br = graded_bracket_value(acopy.at(x), tcopy.at(x));
    return dt + br;
  };
  return out;
}

double bianchi_residual(const LocalConnectionForm& conn, int chart, const Vec& x, double fd_step) {
  AlgebraValuedForm f = curvature_form(conn, chart);
  f.fd_step = fd_step;
  AlgebraValuedForm af = conn.form(chart);
  // Propagate the requested step into the curvature's inner differences too.
  if (!af.analytic_partial) {
    AlgebraValuedForm inner = af;
    inner.fd_step = fd_step;
    LocalConnectionForm tmp = conn;
    tmp.local[chart] = inner;
    f = curvature_form(tmp, chart);
    f.fd_step = fd_step;
    return form_norm(covariant_differential(tmp, chart, f).at(x));
  }
  return form_norm(covariant_differential(conn, chart, f).at(x));
}

AlgebraValuedForm hodge_star(const VolumeData& vol, const AlgebraValuedForm& f) {
  AlgebraValuedForm out;
  out.algebra = f.algebra;
  out.chart = f.chart;
  out.deg = f.dim() - f.deg;
  out.fd_step = f.fd_step;
  AlgebraValuedForm fcopy = f;
  VolumeData v = vol;
  out.eval = [v, fcopy](const Vec& x) { return hodge_star_value(v, fcopy.at(x), x); };
  return out;
}

AlgebraValuedForm covariant_codifferential(const VolumeData& vol, const LocalConnectionForm& conn,
                                           int chart, const AlgebraValuedForm& tau) {
  if (tau.deg < 1) throw std::invalid_argument("covariant_codifferential: degree must be >= 1");
  const int n = tau.dim(), k = tau.deg;
  double sign_g = vol.metric.metric_sign();
  double pref = sign_g * (((n * k + n + 1) % 2 == 0) ? 1.0 : -1.0);
  AlgebraValuedForm star_tau = hodge_star(vol, tau);
  AlgebraValuedForm d_star = covariant_differential(conn, chart, star_tau);
  AlgebraValuedForm star_d_star = hodge_star(vol, d_star);
  AlgebraValuedForm out = star_d_star;
  auto base = star_d_star.eval;
  out.eval = [base, pref](const Vec& x) { return pref * base(x); };
  return out;
}

LocalConnectionForm apply_gauge_to_connection(const GaugeTransformation& t,
                                              const LocalConnectionForm& conn, double fd_step) {
  LocalConnectionForm out = conn;
  for (int a = 0; a < conn.n_charts(); ++a) {
    AlgebraValuedForm fa = conn.form(a);
    auto tau = t.local_tau;
    auto lift = conn.cocycle.cover.chart_to_global[a];
    AlgebraValuedForm na = fa;
    na.analytic_partial = nullptr;
    na.eval = [fa, tau, lift, a, fd_step](const Vec& x) {
      FormValue av = fa.at(x);
      CMat tm = tau(a, lift(x)).mat;
      Eigen::FullPivLU<CMat> lu(tm);
      CMat tinv = lu.inverse();
      FormValue out_v = av;
      for (int i = 0; i < av.dim; ++i) {
        Vec xp = x, xm = x;
        double h = fd_step * (1.0 + std::abs(x(i)));
        xp(i) += h;
        xm(i) -= h;
        CMat dtau = (tau(a, lift(xp)).mat - tau(a, lift(xm)).mat) / (2.0 * h);
        out_v.comps[i] = tinv * av.comps[i] * tm + tinv * dtau;
      }
      return out_v;
    };
    out.local[a] = na;
  }
  return out;
}

LocalConnectionForm single_chart_connection(AlgebraValuedForm a) {
  if (a.deg != 1) throw std::invalid_argument("connection: local form must have degree 1");
  LocalConnectionForm conn;
  conn.cocycle = trivial_cocycle(a.chart, a.algebra);
  conn.local = {std::move(a)};
  return conn;
}

namespace {

std::vector<double> parse_args(const std::string& name, size_t open) {
  std::vector<double> args;
  size_t close = name.rfind(')');
  if (close == std::string::npos || close < open)
    throw std::invalid_argument("connection catalog: malformed parameters in '" + name + "'");
  std::string inner = name.substr(open + 1, close - open - 1);
  std::stringstream ss(inner);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) args.push_back(std::stod(tok));
  }
  return args;
}

// A_N = -i (k/2)(1 - cos th) dphi on the north cap,
// A_S = +i (k/2)(1 + cos th) dphi on the south cap; both give
// F_{th,phi} = -i (k/2) sin th, and A_S - A_N = i k dphi = g_NS^{-1} dg_NS.
AlgebraValuedForm monopole_patch_form(const Chart& chart, double k, bool north) {
  AlgebraValuedForm f;
  f.algebra = LieGroupSpec::u1();
  f.chart = chart;
  f.deg = 1;
  f.eval = [k, north](const Vec& x) {
    FormValue v = FormValue::zero(LieGroupSpec::u1(), 2, 1);
    double c = std::cos(x(0));
    double coeff = north ? -0.5 * k * (1.0 - c) : 0.5 * k * (1.0 + c);
    v.comps[1](0, 0) = Complex(0.0, coeff);
    return v;
  };
  f.analytic_partial = [k](const Vec& x, int dir) {
    FormValue v = FormValue::zero(LieGroupSpec::u1(), 2, 1);
    if (dir == 0) v.comps[1](0, 0) = Complex(0.0, -0.5 * k * std::sin(x(0)));
    return v;
  };
  return f;
}

}  // namespace

LocalConnectionForm connection_catalog(const std::string& name, const Chart& base_chart) {
  size_t open = name.find('(');
  std::string id = name.substr(0, open);
  std::vector<double> args = (open == std::string::npos) ? std::vector<double>{} : parse_args(name, open);

  if (id == "zero") {
    return single_chart_connection(zero_form(LieGroupSpec::u1(), base_chart, 1));
  }
  if (id == "monopole" || id == "monopole_N/S") {
    if (args.size() != 1) throw std::invalid_argument("monopole(k): expected one parameter");
    Cocycle c = build_monopole_bundle(args[0]);
    LocalConnectionForm conn;
    conn.cocycle = c;
    conn.local = {monopole_patch_form(c.cover.charts[0], args[0], true),
                  monopole_patch_form(c.cover.charts[1], args[0], false)};
    return conn;
  }
  if (id == "constant_su2") {
    if (args.size() != 2) throw std::invalid_argument("constant_su2(a,b): expected two parameters");
    if (base_chart.dim < 2) throw std::invalid_argument("constant_su2: chart dim must be >= 2");
    auto spec = LieGroupSpec::su2();
    auto basis = spec.algebra_basis();
    std::vector<CMat> comps(base_chart.dim, CMat::Zero(2, 2));
    comps[0] = args[0] * basis[0];
    comps[1] = args[1] * basis[1];
    return single_chart_connection(constant_form(spec, base_chart, 1, comps));
  }
  if (id == "poly_su2_r4") {
    if (base_chart.dim != 4) throw std::invalid_argument("poly_su2_r4: chart dim must be 4");
    auto spec = LieGroupSpec::su2();
    AlgebraValuedForm f;
    f.algebra = spec;
    f.chart = base_chart;
    f.deg = 1;
    f.eval = [spec](const Vec& x) {
      auto e = spec.algebra_basis();
      FormValue v = FormValue::zero(spec, 4, 1);
      v.comps[0] = 0.20 * x(1) * e[0] + 0.10 * x(2) * e[2];
      v.comps[1] = 0.30 * x(2) * e[1] + 0.05 * x(0) * x(0) * e[0];
      v.comps[2] = 0.25 * x(3) * e[2] + 0.15 * x(0) * x(1) * e[0];
      v.comps[3] = 0.20 * x(0) * e[1] + 0.10 * x(3) * e[2];
      return v;
    };
    return single_chart_connection(f);
  }
  if (id == "coulomb_u1") {
    if (args.size() != 1) throw std::invalid_argument("coulomb_u1(q): expected one parameter");
    if (base_chart.dim != 4) throw std::invalid_argument("coulomb_u1: chart dim must be 4");
    double q = args[0];
    AlgebraValuedForm f;
    f.algebra = LieGroupSpec::u1();
    f.chart = base_chart;
    f.deg = 1;
    f.eval = [q](const Vec& x) {
      FormValue v = FormValue::zero(LieGroupSpec::u1(), 4, 1);
      double r = std::sqrt(x(1) * x(1) + x(2) * x(2) + x(3) * x(3));
      if (r < 1e-9) throw std::domain_error("coulomb_u1: singular on the timelike axis");
      v.comps[0](0, 0) = Complex(0.0, -q / r);
      return v;
    };
    return single_chart_connection(f);
  }
  if (id == "constant_B_u1") {
    if (args.size() != 1) throw std::invalid_argument("constant_B_u1(B): expected one parameter");
    if (base_chart.dim < 2) throw std::invalid_argument("constant_B_u1: chart dim must be >= 2");
    double B = args[0];
    AlgebraValuedForm f;
    f.algebra = LieGroupSpec::u1();
    f.chart = base_chart;
    f.deg = 1;
    int dim = base_chart.dim;
    f.eval = [B, dim](const Vec& x) {
      FormValue v = FormValue::zero(LieGroupSpec::u1(), dim, 1);
      v.comps[1](0, 0) = Complex(0.0, -B * x(0));
      return v;
    };
    f.analytic_partial = [B, dim](const Vec&, int dir) {
      FormValue v = FormValue::zero(LieGroupSpec::u1(), dim, 1);
      if (dir == 0) v.comps[1](0, 0) = Complex(0.0, -B);
      return v;
    };
    return single_chart_connection(f);
  }
  throw std::out_of_range("connection catalog: unknown connection '" + name + "'");
}

bool connection_catalog_has(const std::string& name) {
  try {
    Chart c = Chart::box("probe4", Vec::Constant(4, -10.0), Vec::Constant(4, 10.0));
    connection_catalog(name, c);
    return true;
  } catch (const std::out_of_range&) {
    return false;
  } catch (const std::exception&) {
    return true;  // known name, bad parameters
  }
}

}  // namespace gaugekit
