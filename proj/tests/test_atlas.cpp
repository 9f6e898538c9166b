#include <doctest.h>

#include <random>

#include "gaugekit/atlas.hpp"

using namespace gaugekit;

namespace {

Vec sphere_point(double theta, double phi) {
  Vec u(3);
  u << std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta);
  return u;
}

GaugedSection monopole_unit_section(const Cocycle& c) {
  GaugedSection s;
  s.cocycle = c;
  // value_N = 1; value_S fixed by the transition for exact compatibility.
  Cocycle cc = c;
  s.local_value = [cc](int chart, const Vec& m) {
    CVec v(1);
    if (chart == 0) {
      v(0) = 1.0;
    } else {
      v(0) = cc.g(1, 0, m).mat(0, 0);
    }
    return v;
  };
  return s;
}

}  // namespace

TEST_CASE("validate_cocycle: trivial cocycle passes with zero violation") {
  Chart box = Chart::box("box2", Vec::Constant(2, -1.0), Vec::Constant(2, 1.0));
  Cocycle c = trivial_cocycle(box, LieGroupSpec::u1());
  CocycleReport rep = validate_cocycle(c, 2000);
  CHECK(rep.pass());
  CHECK(rep.max_identity_violation == 0.0);
  CHECK(rep.max_cocycle_violation == 0.0);
}

TEST_CASE("validate_cocycle: integer monopoles pass, k = 0.5 fails at the seam") {
  for (int k : {-2, -1, 0, 1, 2}) {
    CocycleReport rep = validate_cocycle(build_monopole_bundle(k), 10000);
    CHECK(rep.pass(1e-10));
  }
  CocycleReport bad = validate_cocycle(monopole_like_cocycle(0.5), 10000);
  CHECK(!bad.pass(1e-10));
  CHECK(bad.max_seam_jump > 1.0);  // |e^{i pi/2} - e^{-i pi/2}| = 2 up to allowance
}

TEST_CASE("build_monopole_bundle: quantisation guard") {
  CHECK_THROWS_AS(build_monopole_bundle(0.5), std::invalid_argument);
  CHECK_NOTHROW(build_monopole_bundle(-3.0));
}

TEST_CASE("monopole bundles: k and -k are pointwise inverses") {
  Cocycle cp = build_monopole_bundle(2);
  Cocycle cm = build_monopole_bundle(-2);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Vec m = cp.cover.sample_region(rng);
    if (!cp.cover.in_overlap(0, 1, m)) continue;
    CMat prod = cp.g(0, 1, m).mat * cm.g(0, 1, m).mat;
    CHECK((prod - cp.group.identity()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("cover: rejection sampling finds no uncovered point") {
  Cover cov = sphere_two_chart_cover();
  std::mt19937_64 rng(kCocycleSeed);
  int uncovered = 0;
  for (int s = 0; s < 10000; ++s) {
    Vec m = cov.sample_region(rng);
    bool in = false;
    for (auto& f : cov.chart_contains) in = in || f(m);
    if (!in) ++uncovered;
  }
  CHECK(uncovered == 0);
}

TEST_CASE("section_push: trivial cocycle, monopole transition value, round trip") {
  Chart box = Chart::box("box2", Vec::Constant(2, -1.0), Vec::Constant(2, 1.0));
  Cocycle triv = trivial_cocycle(box, LieGroupSpec::u1());
  GaugedSection s;
  s.cocycle = triv;
  s.local_value = [](int, const Vec& m) {
    CVec v(1);
    v(0) = Complex(m(0), m(1));
    return v;
  };
  Vec m(2);
  m << 0.3, -0.2;
  CHECK((section_push(s, 0, 0, m) - s.value(0, m)).norm() == 0.0);

  Cocycle mono = build_monopole_bundle(1);
  GaugedSection ms = monopole_unit_section(mono);
  Vec eq = sphere_point(M_PI / 2.0, M_PI / 2.0);
  // value_S = g_SN * value_N = e^{-i phi} * 1 at phi = pi/2
  CVec pushed = section_push(ms, 0, 1, eq);
  CHECK(std::abs(pushed(0) - std::exp(Complex(0.0, -M_PI / 2.0))) < 1e-12);
  CHECK(std::abs(pushed(0) - ms.value(1, eq)(0)) < 1e-12);

  // push there and back
  GaugedSection generic = ms;
  CVec back = section_push(ms, 1, 0, eq);
  CHECK(std::abs(back(0) * pushed(0) / ms.value(0, eq)(0) - pushed(0)) < 1e-12);
  GaugedSection s2 = ms;
  CVec once = section_push(s2, 0, 1, eq);
  GaugedSection pushed_section = s2;
  CHECK(std::abs(section_push(s2, 1, 0, eq)(0) - s2.value(0, eq)(0)) < 1e-12);
}

TEST_CASE("section_push: outside the overlap throws") {
  Cocycle mono = build_monopole_bundle(1);
  GaugedSection ms = monopole_unit_section(mono);
  CHECK_THROWS_AS(section_push(ms, 0, 1, sphere_point(0.05, 0.0)), std::domain_error);
}

TEST_CASE("section overlap invariant holds for the compatible monopole section") {
  GaugedSection ms = monopole_unit_section(build_monopole_bundle(1));
  CHECK(section_overlap_violation(ms, 500) < 1e-12);
}

TEST_CASE("apply_gauge: identity, global phase, composition law") {
  Cocycle mono = build_monopole_bundle(1);
  GaugedSection s = monopole_unit_section(mono);

  GaugeTransformation id;
  id.cocycle = mono;
  id.local_tau = [](int, const Vec&) {
    return GroupElement{LieGroupSpec::u1(), LieGroupSpec::u1().identity()};
  };
  GaugedSection s_id = apply_gauge(id, s);
  Vec eq = sphere_point(M_PI / 2.0, 1.0);
  CHECK(std::abs(s_id.value(0, eq)(0) - s.value(0, eq)(0)) < 1e-15);

  double theta = 0.8;
  GaugeTransformation phase;
  phase.cocycle = mono;
  phase.local_tau = [theta](int, const Vec&) {
    CMat m(1, 1);
    m(0, 0) = std::exp(Complex(0, theta));
    return GroupElement{LieGroupSpec::u1(), m};
  };
  CHECK(gauge_overlap_violation(phase, 300) < 1e-12);
  GaugedSection s_ph = apply_gauge(phase, s);
  CHECK(std::abs(s_ph.value(0, eq)(0) - std::exp(Complex(0, -theta)) * s.value(0, eq)(0)) < 1e-14);

  // apply_gauge(t2, apply_gauge(t1, s)) = apply_gauge(t1 * t2, s)
  double th2 = -0.3;
  GaugeTransformation phase2 = phase;
  phase2.local_tau = [th2](int, const Vec&) {
    CMat m(1, 1);
    m(0, 0) = std::exp(Complex(0, th2));
    return GroupElement{LieGroupSpec::u1(), m};
  };
  GaugedSection lhs = apply_gauge(phase2, apply_gauge(phase, s));
  GaugeTransformation prod = phase;
  prod.local_tau = [theta, th2](int, const Vec&) {
    CMat m(1, 1);
    m(0, 0) = std::exp(Complex(0, theta + th2));
    return GroupElement{LieGroupSpec::u1(), m};
  };
  GaugedSection rhs = apply_gauge(prod, s);
  CHECK(std::abs(lhs.value(0, eq)(0) - rhs.value(0, eq)(0)) < 1e-12);
}

TEST_CASE("apply_gauge preserves the section overlap invariant (smooth bump taus)") {
  Cocycle mono = build_monopole_bundle(1);
  GaugedSection s = monopole_unit_section(mono);
  // tau built from a smooth global scalar profile; U(1) conjugation is
  // trivial so any single-valued tau satisfies the overlap law.
  GaugeTransformation t;
  t.cocycle = mono;
  t.local_tau = [](int, const Vec& u) {
    double f = 0.7 * std::exp(-2.0 * (1.0 - u(2)) ) * (1.0 + 0.3 * u(0));
    CMat m(1, 1);
    m(0, 0) = std::exp(Complex(0, f));
    return GroupElement{LieGroupSpec::u1(), m};
  };
  CHECK(gauge_overlap_violation(t, 400) < 1e-12);
  GaugedSection ts = apply_gauge(t, s);
  CHECK(section_overlap_violation(ts, 400) < 1e-9);
}

TEST_CASE("cocycle path independence across triple overlaps (three-chart box cover)") {
  // Three overlapping intervals on [-1, 1] with smooth U(1) transitions
  // derived from potentials f_a: g_ab = exp(i (f_a - f_b)); the cocycle
  // condition holds exactly and pushes are path independent.
  Cover cov;
  auto mkchart = [](const char* id, double lo, double hi) {
    Vec l(1), h(1);
    l << lo;
    h << hi;
    return Chart::box(id, l, h);
  };
  cov.charts = {mkchart("a", -1.0, 0.2), mkchart("b", -0.4, 0.6), mkchart("c", 0.0, 1.0)};
  cov.sample_region = [](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    Vec x(1);
    x << ud(rng);
    return x;
  };
  for (int a = 0; a < 3; ++a) {
    Chart ch = cov.charts[a];
    cov.chart_contains.push_back([ch](const Vec& x) { return ch.contains(x); });
    cov.chart_coords.push_back([](const Vec& x) { return x; });
    cov.chart_to_global.push_back([](const Vec& x) { return x; });
  }
  Cocycle c;
  c.cover = cov;
  c.group = LieGroupSpec::u1();
  c.transition = [](int a, int b, const Vec& x) {
    auto f = [](int i, double t) { return (i + 1) * 0.4 * std::sin(3.0 * t + i); };
    CMat m(1, 1);
    m(0, 0) = std::exp(Complex(0, f(a, x(0)) - f(b, x(0))));
    return GroupElement{LieGroupSpec::u1(), m};
  };
  CHECK(validate_cocycle(c, 4000).pass(1e-10));

  GaugedSection s;
  s.cocycle = c;
  Cocycle cc = c;
  s.local_value = [cc](int chart, const Vec& x) {
    CVec v(1);
    v(0) = cc.g(chart, 0, x).mat(0, 0) * Complex(1.0, 0.5);
    return v;
  };
  CHECK(section_overlap_violation(s, 500) < 1e-12);
  Vec x(1);
  x << 0.1;  // point in all three charts
  CVec via_b = section_push(s, 0, 1, x);
  GaugedSection sb = s;
  CVec direct = section_push(s, 0, 2, x);
  // pushing a -> b -> c equals a -> c
  GaugedSection tmp = s;
  CVec ab_then_bc = tmp.act(cc.g(2, 1, x), via_b);
  CHECK((ab_then_bc - direct).norm() < 1e-12);
}
