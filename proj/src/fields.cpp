#include "gaugekit/fields.hpp"

#include <cmath>

namespace gaugekit {

EMField maxwell_F_from_EB(const std::function<Eigen::Vector3d(const Vec&)>& E,
                          const std::function<Eigen::Vector3d(const Vec&)>& B) {
  EMField em;
  em.F = [E, B](const Vec& x) {
    Eigen::Vector3d e = E ? E(x) : Eigen::Vector3d::Zero();
    Eigen::Vector3d b = B ? B(x) : Eigen::Vector3d::Zero();
    Mat f = Mat::Zero(4, 4);
    for (int i = 0; i < 3; ++i) {
      f(0, i + 1) = e(i);
      f(i + 1, 0) = -e(i);
    }
    f(1, 2) = -b(2);
    f(2, 1) = b(2);
    f(1, 3) = b(1);
    f(3, 1) = -b(1);
    f(2, 3) = -b(0);
    f(3, 2) = b(0);
    return f;
  };
  return em;
}

namespace {

// Scalar exterior calculus on real antisymmetric component arrays; written
// with explicit index loops as an independent route from the algebra-valued
// forms code.

double levi_civita_4(int a, int b, int c, int d) {
  std::vector<int> p{a, b, c, d};
  return static_cast<double>(sort_sign(p));
}

// (dF)_{mnr} = d_m F_{nr} - d_n F_{mr} + d_r F_{mn}
double dF_component(const EMField& em, const Vec& x, int m, int n, int r, double h) {
  auto dpart = [&](int dir, int a, int b) {
    Vec xp = x, xm = x;
    double hh = h * (1.0 + std::abs(x(dir)));
    xp(dir) += hh;
    xm(dir) -= hh;
    return (em.F(xp)(a, b) - em.F(xm)(a, b)) / (2.0 * hh);
  };
  return dpart(m, n, r) - dpart(n, m, r) + dpart(r, m, n);
}

// Hodge dual of a 2-form in 4 dimensions: (*F)_{cd} = (s/2) sqrt|g| eps_{abcd} F^{ab}.
Mat star2(const Mat& f, const Mat& ginv, double det_g, double orientation) {
  double vol = orientation * (det_g < 0 ? -1.0 : 1.0) * std::sqrt(std::abs(det_g));
  Mat fr = ginv * f * ginv.transpose();  // F^{ab}
  Mat out = Mat::Zero(4, 4);
  for (int c = 0; c < 4; ++c)
    for (int d = 0; d < 4; ++d) {
      double s = 0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) s += levi_civita_4(a, b, c, d) * fr(a, b);
      out(c, d) = 0.5 * vol * s;
    }
  return out;
}

}  // namespace

std::pair<double, double> maxwell_residuals(const EMField& em, const VolumeData& vol, const Vec& x,
                                            double fd_step) {
  const MetricField& g = vol.metric;
  if (g.dim() != 4) throw std::invalid_argument("maxwell_residuals: 4-dimensional metric required");
  g.chart.require_interior(x, 2.0 * fd_step);

  double d_norm2 = 0;
  for (int m = 0; m < 4; ++m)
    for (int n = m + 1; n < 4; ++n)
      for (int r = n + 1; r < 4; ++r) {
        double v = dF_component(em, x, m, n, r, fd_step);
        d_norm2 += v * v;
      }

  // delta F = sign(g) (-1)^{n k + n + 1} * d * F with n = 4, k = 2:
  // (-1)^13 = -1, so the prefactor is +1 Lorentzian, -1 Riemannian.
  double pref = -g.metric_sign();

  auto star_field = [&](const Vec& y) {
    Mat gy = metric_at(g, y);
    return star2(em.F(y), gy.inverse(), gy.determinant(), vol.orientation);
  };
  // (d *F)_{mnr} then (* d *F)_c via the 3-form dual:
  // (*w)_c = (s/6) sqrt|g| eps_{abrc}... implemented by raising all three
  // indices of w and contracting with eps.
  Mat gx = metric_at(g, x);
  Mat ginv = gx.inverse();
  double det_g = gx.determinant();
  double volf = vol.orientation * (det_g < 0 ? -1.0 : 1.0) * std::sqrt(std::abs(det_g));

  auto dstar = [&](int m, int n, int r) {
    auto dpart = [&](int dir, int a, int b) {
      Vec xp = x, xm = x;
      double hh = fd_step * (1.0 + std::abs(x(dir)));
      xp(dir) += hh;
      xm(dir) -= hh;
      return (star_field(xp)(a, b) - star_field(xm)(a, b)) / (2.0 * hh);
    };
    return dpart(m, n, r) - dpart(n, m, r) + dpart(r, m, n);
  };

  Vec delta_f = Vec::Zero(4);
  for (int c = 0; c < 4; ++c) {
    double s = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int r = 0; r < 4; ++r) {
          double eps = levi_civita_4(a, b, r, c);
          if (eps == 0.0) continue;
          // raise (a b r) of (d*F) and contract; sum over sorted triples via
          // full sum / 3!.
          double w = 0;
          for (int aa = 0; aa < 4; ++aa)
            for (int bb = 0; bb < 4; ++bb)
              for (int rr = 0; rr < 4; ++rr)
                w += ginv(a, aa) * ginv(b, bb) * ginv(r, rr) * dstar(aa, bb, rr);
          s += eps * w;
        }
    delta_f(c) = pref * volf * s / 6.0;
  }
  Vec want = em.j ? em.j(x) : Vec(Vec::Zero(4));
  double second = (delta_f - want).norm();
  return {std::sqrt(d_norm2), second};
}

Mat em_stress_energy(const EMField& em, const MetricField& g, const Vec& x) {
  Mat f = em.F(x);
  Mat gm = metric_at(g, x);
  Mat ginv = gm.inverse();
  Mat f_updown = f * ginv;  // F_m{}^s
  double f2 = 0;            // F_{st} F^{st}
  Mat fr = ginv * f * ginv.transpose();
  for (int s = 0; s < 4; ++s)
    for (int tt = 0; tt < 4; ++tt) f2 += f(s, tt) * fr(s, tt);
  Mat t = Mat::Zero(4, 4);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      double s = 0;
      for (int a = 0; a < 4; ++a) s += f_updown(m, a) * f(n, a);
      t(m, n) = (s - 0.25 * gm(m, n) * f2) / (4.0 * M_PI);
    }
  return t;
}

Vec stress_divergence(const MetricField& g, const std::function<Mat(const Vec&)>& T, const Vec& x,
                      double fd_step) {
  const int n = g.dim();
  Tensor3 gam = levi_civita_christoffel(g, x).gamma;
  Mat ginv = metric_inverse_at(g, x);
  // (nabla T)_{mnr} = d_m T_{nr} - Gamma^s_{mn} T_{sr} - Gamma^s_{mr} T_{ns}
  std::vector<Mat> dT(n);
  for (int m = 0; m < n; ++m) {
    double h = fd_step * (1.0 + std::abs(x(m)));
    Vec xp = x, xm = x;
    xp(m) += h;
    xm(m) -= h;
    dT[m] = (T(xp) - T(xm)) / (2.0 * h);
  }
  Mat tx = T(x);
  Vec out = Vec::Zero(n);
  for (int r = 0; r < n; ++r) {
    double acc = 0;
    for (int m = 0; m < n; ++m)
      for (int nn = 0; nn < n; ++nn) {
        double v = dT[m](nn, r);
        for (int s = 0; s < n; ++s) v -= gam(s, m, nn) * tx(s, r) + gam(s, m, r) * tx(nn, s);
        acc += ginv(m, nn) * v;
      }
    out(r) = acc;
  }
  return out;
}

double yang_mills_residual(const LocalConnectionForm& conn, int chart, const VolumeData& vol,
                           const AlgebraValuedForm& J, const Vec& x, double fd_step) {
  LocalConnectionForm c = conn;
  AlgebraValuedForm a = c.form(chart);
  a.fd_step = fd_step;
  c.local[chart] = a;
  AlgebraValuedForm f = curvature_form(c, chart);
  f.fd_step = fd_step;
  AlgebraValuedForm delta_f = covariant_codifferential(vol, c, chart, f);
  FormValue lhs = delta_f.at(x);
  FormValue rhs = J.eval ? J.at(x) : FormValue::zero(lhs.algebra, lhs.dim, lhs.deg);
  return form_norm(lhs - rhs);
}

double charge_conservation_residual(const LocalConnectionForm& conn, int chart,
                                    const VolumeData& vol, const AlgebraValuedForm& J, const Vec& x,
                                    double fd_step) {
  AlgebraValuedForm j = J;
  j.fd_step = fd_step;
  AlgebraValuedForm dj = covariant_codifferential(vol, conn, chart, j);
  return form_norm(dj.at(x));
}

double ym_action_density(const LocalConnectionForm& conn, int chart, const VolumeData& vol,
                         const Vec& x) {
  AlgebraValuedForm f = curvature_form(conn, chart);
  FormValue fv = f.at(x);
  Mat ginv = metric_inverse_at(vol.metric, x);
  const int n = fv.dim;
  double acc = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      // F^{ij} = g^{ia} g^{jb} F_{ab}
      CMat up = CMat::Zero(fv.algebra.n, fv.algebra.n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          if (a == b) continue;
          std::vector<int> ab{a, b};
          int sgn = sort_sign(ab);
          up += ginv(i, a) * ginv(j, b) * static_cast<double>(sgn) * fv.comp(ab);
        }
      std::vector<int> ij{i, j};
      acc += invariant_inner(AlgebraElement{fv.algebra, fv.comp(ij)}, AlgebraElement{fv.algebra, up});
    }
  return -0.5 * acc;
}

double fibre_scalar_curvature(const LieGroupSpec& spec) {
  switch (spec.kind) {
    case GroupKind::U1: return 0.0;
    // Bi-invariant metric with orthonormal structure constants: sectional
    // curvature (1/4)||[E_a,E_b]||^2 = 1/4 per plane, six planes.
    case GroupKind::SO3:
    case GroupKind::SU2: return 1.5;
    case GroupKind::GLn:
      throw std::invalid_argument("fibre_scalar_curvature: no bi-invariant metric normalization for GL(n)");
  }
  return 0.0;
}

ScalarCurvatureReport scalar_curvature_decomposition_check(const MetricField& g,
                                                           const LocalConnectionForm& conn,
                                                           int chart, const Vec& x,
                                                           double fd_step) {
  ScalarCurvatureReport rep;
  const int d = conn.algebra().algebra_dim();
  MetricField h = kk_total_metric(g, conn, chart);
  h.fd_step = fd_step;
  Vec y(g.dim() + d);
  y.head(g.dim()) = x;
  y.tail(d).setZero();
  rep.S_h = riemann_curvature(h, y, fd_step).scalar;
  rep.S_g = riemann_curvature(g, x, fd_step).scalar;

  AlgebraValuedForm f = curvature_form(conn, chart);
  FormValue fv = f.at(x);
  Mat ginv = metric_inverse_at(g, x);
  const int n = g.dim();
  double acc = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      CMat up = CMat::Zero(fv.algebra.n, fv.algebra.n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          if (a == b) continue;
          std::vector<int> ab{a, b};
          int sgn = sort_sign(ab);
          up += ginv(i, a) * ginv(j, b) * static_cast<double>(sgn) * fv.comp(ab);
        }
      std::vector<int> ij{i, j};
      acc += invariant_inner(AlgebraElement{fv.algebra, fv.comp(ij)}, AlgebraElement{fv.algebra, up});
    }
  rep.coupling = 0.5 * acc;
  rep.S_k = fibre_scalar_curvature(conn.algebra());
  rep.gap = std::abs(rep.S_h - rep.S_g + rep.coupling - rep.S_k);
  return rep;
}

void ResidualReport::record(const std::string& name, double value, double fd_step) {
  Entry& e = entries[name];
  e.max_abs = std::max(e.max_abs, std::abs(value));
  e.samples += 1;
  e.fd_step = fd_step;
}

void ResidualReport::merge(const ResidualReport& other) {
  for (const auto& [name, e] : other.entries) {
    Entry& mine = entries[name];
    mine.max_abs = std::max(mine.max_abs, e.max_abs);
    mine.samples += e.samples;
    mine.fd_step = e.fd_step;
  }
}

}  // namespace gaugekit
