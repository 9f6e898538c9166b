#include "gaugekit/metric.hpp"

#include <cmath>

namespace gaugekit {

Mat metric_at(const MetricField& g, const Vec& x) {
  Mat m = g.eval(x);
  if (!m.allFinite()) throw std::domain_error("metric: non-finite evaluation");
  double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12) throw std::domain_error("metric: evaluation not symmetric");
  return 0.5 * (m + m.transpose());
}

Mat metric_inverse_at(const MetricField& g, const Vec& x) {
  Mat m = metric_at(g, x);
  if (condition_number(m) >= 1e12) throw std::domain_error("metric: degenerate (condition number >= 1e12)");
  return m.inverse();
}

std::vector<Mat> metric_derivatives(const MetricField& g, const Vec& x) {
  if (g.analytic_derivative) return g.analytic_derivative(x);
  const int n = g.dim();
  std::vector<Mat> d(n);
  for (int i = 0; i < n; ++i) {
    double h = g.fd_step * (1.0 + std::abs(x(i)));
    Vec xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    d[i] = (metric_at(g, xp) - metric_at(g, xm)) / (2.0 * h);
  }
  return d;
}

void validate_metric_point(const MetricField& g, const Vec& x) {
  Mat m = metric_at(g, x);
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  int np = 0, nn = 0;
  for (int i = 0; i < m.rows(); ++i) {
    if (es.eigenvalues()(i) > 0) ++np;
    else ++nn;
  }
  if (np != g.sig_pos || nn != g.sig_neg)
    throw std::domain_error("metric: signature mismatch at sampled point");
  if (condition_number(m) >= 1e12) throw std::domain_error("metric: degenerate at sampled point");
}

namespace {

MetricField flat_euclidean(int n) {
  MetricField g;
  Vec lo = Vec::Constant(n, -1e6), hi = Vec::Constant(n, 1e6);
  g.chart = Chart::box("euclidean" + std::to_string(n), lo, hi);
  g.sig_pos = n;
  g.sig_neg = 0;
  g.eval = [n](const Vec&) { return Mat::Identity(n, n); };
  g.analytic_derivative = [n](const Vec&) { return std::vector<Mat>(n, Mat::Zero(n, n)); };
  return g;
}

MetricField minkowski4() {
  MetricField g;
  Vec lo = Vec::Constant(4, -1e6), hi = Vec::Constant(4, 1e6);
  g.chart = Chart::box("minkowski4", lo, hi);
  g.chart.coord_names = {"t", "x", "y", "z"};
  g.sig_pos = 3;
  g.sig_neg = 1;
  g.eval = [](const Vec&) {
    Mat m = Mat::Identity(4, 4);
    m(0, 0) = -1.0;
    return m;
  };
  g.analytic_derivative = [](const Vec&) { return std::vector<Mat>(4, Mat::Zero(4, 4)); };
  return g;
}

// Unit 2-sphere, polar coordinates (theta, phi), poles excluded.
MetricField sphere2() {
  MetricField g;
  Vec lo(2), hi(2);
  lo << 1e-6, 0.0;
  hi << M_PI - 1e-6, 2.0 * M_PI;
  g.chart = Chart::box("sphere2", lo, hi);
  g.chart.coord_names = {"theta", "phi"};
  g.chart.period[1] = 2.0 * M_PI;
  g.sig_pos = 2;
  g.sig_neg = 0;
  g.eval = [](const Vec& x) {
    Mat m = Mat::Zero(2, 2);
    double s = std::sin(x(0));
    m(0, 0) = 1.0;
    m(1, 1) = s * s;
    return m;
  };
  g.analytic_derivative = [](const Vec& x) {
    std::vector<Mat> d(2, Mat::Zero(2, 2));
    d[0](1, 1) = 2.0 * std::sin(x(0)) * std::cos(x(0));
    return d;
  };
  return g;
}

// Exterior Schwarzschild, M = 1, coordinates (t, r, theta, phi), r > 2.5.
MetricField schwarzschild_ext() {
  constexpr double M = 1.0;
  MetricField g;
  Vec lo(4), hi(4);
  lo << -1e6, 2.5, 1e-6, 0.0;
  hi << 1e6, 1e6, M_PI - 1e-6, 2.0 * M_PI;
  g.chart = Chart::box("schwarzschild_ext", lo, hi);
  g.chart.coord_names = {"t", "r", "theta", "phi"};
  g.chart.period[3] = 2.0 * M_PI;
  g.sig_pos = 3;
  g.sig_neg = 1;
  g.eval = [](const Vec& x) {
    double r = x(1), th = x(2);
    double f = 1.0 - 2.0 * M / r;
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = -f;
    m(1, 1) = 1.0 / f;
    m(2, 2) = r * r;
    m(3, 3) = r * r * std::sin(th) * std::sin(th);
    return m;
  };
  g.analytic_derivative = [](const Vec& x) {
    double r = x(1), th = x(2);
    double f = 1.0 - 2.0 * M / r;
    std::vector<Mat> d(4, Mat::Zero(4, 4));
    d[1](0, 0) = -2.0 * M / (r * r);
    d[1](1, 1) = -(2.0 * M / (r * r)) / (f * f);
    d[1](2, 2) = 2.0 * r;
    d[1](3, 3) = 2.0 * r * std::sin(th) * std::sin(th);
    d[2](3, 3) = r * r * 2.0 * std::sin(th) * std::cos(th);
    return d;
  };
  return g;
}

}  // namespace

MetricField metric_catalog(const std::string& name) {
  if (name == "euclidean2") return flat_euclidean(2);
  if (name == "euclidean3") return flat_euclidean(3);
  if (name == "euclidean4") return flat_euclidean(4);
  if (name == "minkowski4") return minkowski4();
  if (name == "sphere2") return sphere2();
  if (name == "schwarzschild_ext") return schwarzschild_ext();
  throw std::out_of_range("metric catalog: unknown metric '" + name + "'");
}

bool metric_catalog_has(const std::string& name) {
  try {
    metric_catalog(name);
    return true;
  } catch (const std::out_of_range&) {
    return false;
  }
}

}  // namespace gaugekit
