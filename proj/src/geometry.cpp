#include "gaugekit/geometry.hpp"

#include <cmath>

namespace gaugekit {

ChristoffelTensor levi_civita_christoffel(const MetricField& g, const Vec& x) {
  const int n = g.dim();
  g.chart.require_interior(x, 2.0 * g.fd_step);
  Mat ginv = metric_inverse_at(g, x);
  std::vector<Mat> dg = metric_derivatives(g, x);

  ChristoffelTensor ch;
  ch.point = x;
  ch.gamma = Tensor3(n, n, n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0;
        for (int l = 0; l < n; ++l)
          s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        s *= 0.5;
        ch.gamma(k, i, j) = s;
        ch.gamma(k, j, i) = s;
      }
  return ch;
}

CurvatureTensor riemann_curvature(const MetricField& g, const Vec& x, double fd_step) {
  const int n = g.dim();
  g.chart.require_interior(x, 3.0 * fd_step);

  // dGamma[i] = d Gamma / d x^i by central differences.
  std::vector<Tensor3> dgamma(n);
  for (int i = 0; i < n; ++i) {
    double h = fd_step * (1.0 + std::abs(x(i)));
    Vec xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    Tensor3 gp = levi_civita_christoffel(g, xp).gamma;
    Tensor3 gm = levi_civita_christoffel(g, xm).gamma;
    dgamma[i] = Tensor3(n, n, n);
    for (size_t s = 0; s < dgamma[i].a.size(); ++s) dgamma[i].a[s] = (gp.a[s] - gm.a[s]) / (2.0 * h);
  }
  Tensor3 gam = levi_civita_christoffel(g, x).gamma;

  CurvatureTensor out;
  out.point = x;
  out.riemann = Tensor4(n);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          double v = dgamma[i](l, j, k) - dgamma[j](l, i, k);
          for (int m = 0; m < n; ++m)
            v += gam(l, i, m) * gam(m, j, k) - gam(l, j, m) * gam(m, i, k);
          out.riemann(l, k, i, j) = v;
          out.riemann(l, k, j, i) = -v;
        }

  out.ricci = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      double v = 0;
      for (int i = 0; i < n; ++i) v += out.riemann(i, k, i, j);
      out.ricci(k, j) = v;
    }
  Mat ginv = metric_inverse_at(g, x);
  out.scalar = (ginv * out.ricci).trace();
  return out;
}

Mat einstein_residual(const MetricField& g, const std::function<Mat(const Vec&)>& stress_energy,
                      const Vec& x, double fd_step) {
  CurvatureTensor c = riemann_curvature(g, x, fd_step);
  Mat gm = metric_at(g, x);
  Mat G = c.ricci - 0.5 * c.scalar * gm;
  Mat T = stress_energy ? stress_energy(x) : Mat::Zero(g.dim(), g.dim());
  return G - 8.0 * M_PI * T;
}

Tensor3 torsion(const std::function<Tensor3(const Vec&)>& gamma_field, const Vec& x) {
  Tensor3 gam = gamma_field(x);
  const int n = gam.n0;
  Tensor3 t(n, n, n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t(k, i, j) = gam(k, i, j) - gam(k, j, i);
  return t;
}

std::vector<Vec> path_velocity(const PathSamples& path) {
  const int m = static_cast<int>(path.x.size());
  if (m < 3) throw std::invalid_argument("path: need at least 3 samples");
  std::vector<Vec> v(m);
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      double h = path.t(1) - path.t(0);
      v[0] = (-3.0 * path.x[0] + 4.0 * path.x[1] - path.x[2]) / (2.0 * h);
    } else if (i == m - 1) {
      double h = path.t(m - 1) - path.t(m - 2);
      v[m - 1] = (3.0 * path.x[m - 1] - 4.0 * path.x[m - 2] + path.x[m - 3]) / (2.0 * h);
    } else {
      v[i] = (path.x[i + 1] - path.x[i - 1]) / (path.t(i + 1) - path.t(i - 1));
    }
  }
  return v;
}

namespace {

// Composite Simpson on a uniform grid; 3/8 rule on the tail when the
// interval count is odd.
double simpson(const Vec& t, const std::vector<double>& f) {
  const int m = static_cast<int>(f.size());
  if (m < 3) throw std::invalid_argument("quadrature: need at least 3 samples");
  const double h = t(1) - t(0);
  double s = 0;
  int last = (m % 2 == 1) ? m - 1 : m - 4;
  for (int i = 0; i + 2 <= last; i += 2) s += (h / 3.0) * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
  if (m % 2 == 0) {
    int i = m - 4;
    s += (3.0 * h / 8.0) * (f[i] + 3.0 * f[i + 1] + 3.0 * f[i + 2] + f[i + 3]);
  }
  return s;
}

}  // namespace

double energy_integral(const MetricField& g, const PathSamples& path) {
  auto v = path_velocity(path);
  std::vector<double> f(path.x.size());
  for (size_t i = 0; i < path.x.size(); ++i) {
    Mat gm = metric_at(g, path.x[i]);
    f[i] = 0.5 * v[i].dot(gm * v[i]);
  }
  return simpson(path.t, f);
}

double first_variation(const MetricField& g, const PathSamples& path, const std::vector<Vec>& r) {
  const int m = static_cast<int>(path.x.size());
  if (static_cast<int>(r.size()) != m) throw std::invalid_argument("first_variation: sample count mismatch");
  if (r.front().norm() > 1e-12 || r.back().norm() > 1e-12)
    throw std::invalid_argument("first_variation: variation must vanish at both endpoints");

  auto v = path_velocity(path);
  // c'' by second central differences (one-sided values never contribute:
  // r vanishes at the ends).
  const double h = path.t(1) - path.t(0);
  std::vector<double> f(m, 0.0);
  for (int i = 1; i < m - 1; ++i) {
    Vec acc = (path.x[i + 1] - 2.0 * path.x[i] + path.x[i - 1]) / (h * h);
    Mat gm = metric_at(g, path.x[i]);
    std::vector<Mat> dg = metric_derivatives(g, path.x[i]);
    // Tg(X)(Y,Z) = X^l d_l g(Y,Z)
    double t_cv_cr = 0, t_rv_cv = 0;
    for (int l = 0; l < g.dim(); ++l) {
      t_cv_cr += v[i](l) * (v[i].dot(dg[l] * r[i]));
      t_rv_cv += r[i](l) * (v[i].dot(dg[l] * v[i]));
    }
    f[i] = -t_cv_cr - acc.dot(gm * r[i]) + 0.5 * t_rv_cv;
  }
  return simpson(path.t, f);
}

}  // namespace gaugekit
