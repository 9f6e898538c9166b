#include <doctest.h>

#include <random>

#include "gaugekit/geometry.hpp"

using namespace gaugekit;

namespace {

std::mt19937_64 rng(7);

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

PathSamples sample_path(double t0, double t1, int n, const std::function<Vec(double)>& c) {
  PathSamples p;
  p.t = Vec::LinSpaced(n, t0, t1);
  p.x.resize(n);
  for (int i = 0; i < n; ++i) p.x[i] = c(p.t(i));
  return p;
}

}  // namespace

TEST_CASE("christoffel: flat metrics vanish") {
  for (const char* name : {"euclidean3", "minkowski4"}) {
    MetricField g = metric_catalog(name);
    Vec x = Vec::Constant(g.dim(), 0.3);
    CHECK(levi_civita_christoffel(g, x).gamma.max_abs() < 1e-12);
  }
}

TEST_CASE("christoffel: sphere values at theta = pi/4") {
  MetricField g = metric_catalog("sphere2");
  Vec x = vec2(M_PI / 4.0, 1.0);
  Tensor3 gam = levi_civita_christoffel(g, x).gamma;
  // Gamma^theta_{phi phi} = -sin th cos th = -1/2; Gamma^phi_{theta phi} = cot th = 1
  CHECK(gam(0, 1, 1) == doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(gam(1, 0, 1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(gam(1, 1, 0) == doctest::Approx(1.0).epsilon(1e-10));

  // finite-difference oracle on the raw metric with h = 1e-5
  MetricField gfd = g;
  gfd.analytic_derivative = nullptr;
  gfd.fd_step = 1e-5;
  Tensor3 gam_fd = levi_civita_christoffel(gfd, x).gamma;
  for (size_t i = 0; i < gam.a.size(); ++i) CHECK(std::abs(gam.a[i] - gam_fd.a[i]) < 1e-8);
}

TEST_CASE("christoffel: lower-index symmetry at random points") {
  for (const char* name : {"sphere2", "schwarzschild_ext"}) {
    MetricField g = metric_catalog(name);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      Vec x(g.dim());
      for (int i = 0; i < g.dim(); ++i) {
        double lo = std::max(g.chart.lo(i), -10.0), hi = std::min(g.chart.hi(i), 10.0);
        if (name == std::string("schwarzschild_ext") && i == 1) {
          lo = 3.0;
          hi = 20.0;
        }
        x(i) = lo + 0.1 + ud(rng) * (hi - lo - 0.2);
      }
      Tensor3 gam = levi_civita_christoffel(g, x).gamma;
      for (int k = 0; k < g.dim(); ++k)
        for (int i = 0; i < g.dim(); ++i)
          for (int j = 0; j < g.dim(); ++j) CHECK(gam(k, i, j) == gam(k, j, i));
    }
  }
}

TEST_CASE("christoffel: domain and degeneracy guards") {
  MetricField g = metric_catalog("sphere2");
  CHECK_THROWS_AS(levi_civita_christoffel(g, vec2(-1.0, 0.0)), std::domain_error);
  MetricField bad = g;
  bad.eval = [](const Vec&) { return Mat::Zero(2, 2); };
  CHECK_THROWS_AS(levi_civita_christoffel(bad, vec2(1.0, 1.0)), std::domain_error);
}

TEST_CASE("christoffel: finite differences converge at second order") {
  MetricField g = metric_catalog("sphere2");
  MetricField gfd = g;
  gfd.analytic_derivative = nullptr;
  Vec x = vec2(1.1, 2.0);
  Tensor3 exact = levi_civita_christoffel(g, x).gamma;
  auto err = [&](double h) {
    gfd.fd_step = h;
    Tensor3 got = levi_civita_christoffel(gfd, x).gamma;
    double worst = 0;
    for (size_t i = 0; i < got.a.size(); ++i) worst = std::max(worst, std::abs(got.a[i] - exact.a[i]));
    return worst;
  };
  double e1 = err(1e-3), e2 = err(5e-4);
  CHECK(e1 / e2 >= 3.5);
}

TEST_CASE("riemann: flat space vanishes, unit sphere has scalar 2") {
  MetricField flat = metric_catalog("euclidean3");
  CurvatureTensor c = riemann_curvature(flat, Vec::Constant(3, 0.5));
  CHECK(c.riemann.max_abs() < 1e-10);

  MetricField s2 = metric_catalog("sphere2");
  std::uniform_real_distribution<double> ud(0.35, M_PI - 0.35);
  for (int trial = 0; trial < 50; ++trial) {
    Vec x = vec2(ud(rng), 2.0 * ud(rng));
    CurvatureTensor cs = riemann_curvature(s2, x, 1e-5);
    CHECK(cs.scalar == doctest::Approx(2.0).epsilon(1e-5));
  }
}

TEST_CASE("riemann: 2-form slot antisymmetry is structural") {
  MetricField s2 = metric_catalog("sphere2");
  CurvatureTensor c = riemann_curvature(s2, vec2(1.0, 1.0));
  for (int l = 0; l < 2; ++l)
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(c.riemann(l, k, i, j) == -c.riemann(l, k, j, i));
}

TEST_CASE("riemann: first Bianchi cyclic symmetry on catalog metrics") {
  for (const char* name : {"sphere2", "schwarzschild_ext"}) {
    MetricField g = metric_catalog(name);
    Vec x(g.dim());
    if (g.dim() == 2) x = vec2(0.9, 1.5);
    else {
      x.setZero();
      x(1) = 6.0;
      x(2) = 1.2;
      x(3) = 0.7;
    }
    CurvatureTensor c = riemann_curvature(g, x, 1e-5);
    for (int l = 0; l < g.dim(); ++l)
      for (int k = 0; k < g.dim(); ++k)
        for (int i = 0; i < g.dim(); ++i)
          for (int j = 0; j < g.dim(); ++j) {
            double cyc = c.riemann(l, k, i, j) + c.riemann(l, i, j, k) + c.riemann(l, j, k, i);
            CHECK(std::abs(cyc) < 1e-8);
          }
  }
}

TEST_CASE("riemann: Schwarzschild exterior is Ricci flat") {
  MetricField g = metric_catalog("schwarzschild_ext");
  std::uniform_real_distribution<double> ur(3.0, 20.0), uth(0.5, M_PI - 0.5), uph(0.0, 6.0);
  for (int trial = 0; trial < 10; ++trial) {
    Vec x(4);
    x << 0.0, ur(rng), uth(rng), uph(rng);
    CurvatureTensor c = riemann_curvature(g, x, 1e-4);
    CHECK(c.ricci.cwiseAbs().maxCoeff() < 1e-4);
  }
}

TEST_CASE("einstein residual: vacuum and prescribed stress") {
  MetricField mink = metric_catalog("minkowski4");
  Vec x = Vec::Zero(4);
  CHECK(einstein_residual(mink, nullptr, x).cwiseAbs().maxCoeff() < 1e-10);

  MetricField schw = metric_catalog("schwarzschild_ext");
  Vec xs(4);
  xs << 0.0, 8.0, 1.3, 0.4;
  CHECK(einstein_residual(schw, nullptr, xs, 1e-4).cwiseAbs().maxCoeff() < 1e-3);

  double rho = 0.7;
  auto stress = [rho](const Vec&) {
    Mat t = Mat::Zero(4, 4);
    t(0, 0) = rho;
    return t;
  };
  Mat res = einstein_residual(mink, stress, x);
  Mat expect = Mat::Zero(4, 4);
  expect(0, 0) = -8.0 * M_PI * rho;
  CHECK((res - expect).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("torsion: Levi-Civita is torsion free; definition unwinds") {
  MetricField s2 = metric_catalog("sphere2");
  auto lc_field = [&s2](const Vec& x) { return levi_civita_christoffel(s2, x).gamma; };
  CHECK(torsion(lc_field, vec2(1.0, 1.0)).max_abs() == 0.0);

  auto gamma_field = [](const Vec&) {
    Tensor3 g(3, 3, 3);
    g(2, 0, 1) = 1.0;  // Gamma^z_{xy} = 1, Gamma^z_{yx} = 0
    return g;
  };
  Tensor3 t = torsion(gamma_field, Vec::Zero(3));
  CHECK(t(2, 0, 1) == 1.0);
  CHECK(t(2, 1, 0) == -1.0);

  std::normal_distribution<double> nd(0.0, 1.0);
  Tensor3 rnd(3, 3, 3);
  for (auto& v : rnd.a) v = nd(rng);
  auto rnd_field = [&rnd](const Vec&) { return rnd; };
  Tensor3 tr = torsion(rnd_field, Vec::Zero(3));
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(tr(k, i, j) + tr(k, j, i) == 0.0);
}

TEST_CASE("energy integral: straight line, rest point, quarter great circle") {
  MetricField e2 = metric_catalog("euclidean2");
  Vec v = vec2(2.0, 0.0);
  auto line = sample_path(0.0, 1.0, 501, [&v](double t) { return Vec(t * v); });
  CHECK(energy_integral(e2, line) == doctest::Approx(2.0).epsilon(1e-10));

  auto rest = sample_path(0.0, 1.0, 501, [](double) { return vec2(0.4, 0.9); });
  CHECK(std::abs(energy_integral(e2, rest)) < 1e-12);

  MetricField s2 = metric_catalog("sphere2");
  auto quarter = sample_path(0.0, M_PI / 2.0, 2001, [](double t) { return vec2(M_PI / 2.0, t); });
  CHECK(energy_integral(s2, quarter) == doctest::Approx(M_PI / 4.0).epsilon(1e-6));
}

TEST_CASE("energy integral: fewer than 3 samples rejected") {
  MetricField e2 = metric_catalog("euclidean2");
  PathSamples p;
  p.t = Vec::LinSpaced(2, 0.0, 1.0);
  p.x = {vec2(0, 0), vec2(1, 0)};
  CHECK_THROWS_AS(energy_integral(e2, p), std::invalid_argument);
}

TEST_CASE("first variation: straight line and zero variation") {
  MetricField e2 = metric_catalog("euclidean2");
  auto line = sample_path(0.0, 1.0, 2001, [](double t) { return vec2(t, 2.0 * t); });
  std::vector<Vec> r(line.x.size(), Vec::Zero(2));
  for (size_t i = 0; i < r.size(); ++i) {
    double t = line.t(static_cast<int>(i));
    r[i] = vec2(std::sin(M_PI * t), 0.5 * std::sin(2.0 * M_PI * t));
  }
  CHECK(std::abs(first_variation(e2, line, r)) < 1e-8);

  std::vector<Vec> zero(line.x.size(), Vec::Zero(2));
  CHECK(first_variation(e2, line, zero) == 0.0);
}

TEST_CASE("first variation: parabola against the action-difference oracle") {
  MetricField e2 = metric_catalog("euclidean2");
  const int n = 4001;
  auto curve = sample_path(0.0, 1.0, n, [](double t) { return vec2(t, t * t); });
  std::vector<Vec> r(n);
  for (int i = 0; i < n; ++i) r[i] = vec2(0.0, std::sin(M_PI * curve.t(i)));

  double got = first_variation(e2, curve, r);

  // independent oracle: (S(c + eps r) - S(c - eps r)) / (2 eps)
  const double eps = 1e-5;
  PathSamples plus = curve, minus = curve;
  for (int i = 0; i < n; ++i) {
    plus.x[i] = curve.x[i] + eps * r[i];
    minus.x[i] = curve.x[i] - eps * r[i];
  }
  double oracle = (energy_integral(e2, plus) - energy_integral(e2, minus)) / (2.0 * eps);
  CHECK(got == doctest::Approx(oracle).epsilon(1e-6));
  // frozen closed form for this data: -integral g(c'', r) dt = -4/pi
  CHECK(got == doctest::Approx(-4.0 / M_PI).epsilon(1e-6));
}

TEST_CASE("first variation: endpoint support enforced") {
  MetricField e2 = metric_catalog("euclidean2");
  auto line = sample_path(0.0, 1.0, 101, [](double t) { return vec2(t, 0.0); });
  std::vector<Vec> bad(line.x.size(), vec2(1.0, 0.0));
  CHECK_THROWS_AS(first_variation(e2, line, bad), std::invalid_argument);
}
