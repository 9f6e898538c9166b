#include "gaugekit/atlas.hpp"

#include <cmath>

namespace gaugekit {


int Cover::chart_index(const std::string& id) const {
  for (size_t i = 0; i < charts.size(); ++i)
    if (charts[i].id == id) return static_cast<int>(i);
  throw std::out_of_range("cover: unknown chart '" + id + "'");
}

CocycleReport validate_cocycle(const Cocycle& c, int samples, uint64_t seed) {
  std::mt19937_64 rng(seed);
  CocycleReport rep;
  rep.samples = samples;
  const int nc = static_cast<int>(c.cover.charts.size());

  for (int s = 0; s < samples; ++s) {
    Vec m = c.cover.sample_region(rng);
    bool covered = false;
    std::vector<int> in;
    for (int a = 0; a < nc; ++a) {
      if (c.cover.chart_contains[a](m)) {
        covered = true;
        in.push_back(a);
      }
    }
    if (!covered) {
      rep.uncovered_point_found = true;
      continue;
    }
    for (int a : in) {
      double idv = (c.g(a, a, m).mat - c.group.identity()).cwiseAbs().maxCoeff();
      rep.max_identity_violation = std::max(rep.max_identity_violation, idv);
    }
    // Pair (inverse) and triple (composition) conditions on this sample.
    for (size_t ia = 0; ia < in.size(); ++ia)
      for (size_t ib = ia + 1; ib < in.size(); ++ib) {
        int a = in[ia], b = in[ib];
        CMat prod = c.g(a, b, m).mat * c.g(b, a, m).mat;
        double v = (prod - c.group.identity()).cwiseAbs().maxCoeff();
        rep.max_cocycle_violation = std::max(rep.max_cocycle_violation, v);
        for (size_t ic = 0; ic < in.size(); ++ic) {
          int g3 = in[ic];
          CMat lhs = c.g(a, b, m).mat * c.g(b, g3, m).mat;
          CMat rhs = c.g(a, g3, m).mat;
          double tv = (lhs - rhs).cwiseAbs().maxCoeff();
          rep.max_cocycle_violation = std::max(rep.max_cocycle_violation, tv);
        }
      }
  }

  // Single-valuedness across periodic seams: coordinates at either end of a
  // periodic axis name the same global point, so the transition evaluated
  // there cannot jump. A smooth single-valued map moves O(eps) over the
  // eps-wide gap; anything above the allowance is a genuine branch jump
  // (e.g. exp(i k phi) with non-integer k).
  const double seam_eps = 1e-7;
  const double smooth_allowance = 1e-3;
  for (int a = 0; a < nc; ++a) {
    const Chart& ch = c.cover.charts[a];
    for (int i = 0; i < ch.dim; ++i) {
      if (ch.period[i] <= 0) continue;
      int probes = 0;
      for (int s = 0; s < 256 && probes < 16; ++s) {
        Vec m = c.cover.sample_region(rng);
        if (!c.cover.chart_contains[a](m)) continue;
        for (int b = 0; b < nc; ++b) {
          if (b == a || !c.cover.chart_contains[b](m)) continue;
          Vec x = c.cover.chart_coords[a](m);
          Vec xl = x, xr = x;
          xl(i) = ch.lo(i) + seam_eps * ch.period[i];
          xr(i) = ch.lo(i) + (1.0 - seam_eps) * ch.period[i];
          GroupElement gl = c.g(a, b, c.cover.chart_to_global[a](xl));
          GroupElement gr = c.g(a, b, c.cover.chart_to_global[a](xr));
          double jump = (gl.mat - gr.mat).cwiseAbs().maxCoeff();
          rep.max_seam_jump = std::max(rep.max_seam_jump, std::max(0.0, jump - smooth_allowance));
          ++probes;
        }
      }
    }
  }
  return rep;
}

CVec section_push(const GaugedSection& s, int from_chart, int to_chart, const Vec& global) {
  if (!s.cocycle.cover.in_overlap(from_chart, to_chart, global))
    throw std::domain_error("section_push: point outside chart overlap");
  GroupElement g = s.cocycle.g(to_chart, from_chart, global);
  return s.act(g, s.value(from_chart, global));
}

GaugedSection apply_gauge(const GaugeTransformation& t, const GaugedSection& s) {
  GaugedSection out = s;
  auto tau = t.local_tau;
  auto base = s;
  out.local_value = [tau, base](int a, const Vec& m) {
    GroupElement ta = tau(a, m);
    Eigen::FullPivLU<CMat> lu(ta.mat);
    GroupElement tinv{ta.spec, lu.inverse()};
    return base.act(tinv, base.value(a, m));
  };
  return out;
}

double section_overlap_violation(const GaugedSection& s, int samples, uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int nc = static_cast<int>(s.cocycle.cover.charts.size());
  double worst = 0;
  for (int it = 0; it < samples; ++it) {
    Vec m = s.cocycle.cover.sample_region(rng);
    for (int a = 0; a < nc; ++a)
      for (int b = a + 1; b < nc; ++b) {
        if (!s.cocycle.cover.in_overlap(a, b, m)) continue;
        CVec lhs = s.value(a, m);
        CVec rhs = s.act(s.cocycle.g(a, b, m), s.value(b, m));
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
      }
  }
  return worst;
}

double gauge_overlap_violation(const GaugeTransformation& t, int samples, uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int nc = static_cast<int>(t.cocycle.cover.charts.size());
  double worst = 0;
  for (int it = 0; it < samples; ++it) {
    Vec m = t.cocycle.cover.sample_region(rng);
    for (int a = 0; a < nc; ++a)
      for (int b = a + 1; b < nc; ++b) {
        if (!t.cocycle.cover.in_overlap(a, b, m)) continue;
        CMat gab = t.cocycle.g(a, b, m).mat;
        Eigen::FullPivLU<CMat> lu(gab);
        CMat lhs = t.local_tau(a, m).mat;
        CMat rhs = gab * t.local_tau(b, m).mat * lu.inverse();
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
      }
  }
  return worst;
}

namespace {

Vec sphere_to_angles(const Vec& u) {
  Vec x(2);
  x(0) = std::acos(std::clamp(u(2), -1.0, 1.0));
  double phi = std::atan2(u(1), u(0));
  if (phi < 0) phi += 2.0 * M_PI;
  x(1) = phi;
  return x;
}

}  // namespace

Cover sphere_two_chart_cover(double theta_max) {
  Cover cover;
  Vec lon(2), hin(2), los(2), his(2);
  lon << 1e-6, 0.0;
  hin << theta_max, 2.0 * M_PI;
  los << M_PI - theta_max, 0.0;
  his << M_PI - 1e-6, 2.0 * M_PI;
  Chart north("sphere_N", lon, hin);
  north.coord_names = {"theta", "phi"};
  north.period[1] = 2.0 * M_PI;
  Chart south("sphere_S", los, his);
  south.coord_names = {"theta", "phi"};
  south.period[1] = 2.0 * M_PI;
  cover.charts = {north, south};

  cover.sample_region = [](std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Vec u(3);
    do {
      u << nd(rng), nd(rng), nd(rng);
    } while (u.norm() < 1e-8);
    u.normalize();
    return u;
  };
  double tmax = theta_max;
  cover.chart_contains = {
      [tmax](const Vec& u) {
        double th = std::acos(std::clamp(u(2), -1.0, 1.0));
        return th >= 1e-6 && th <= tmax;
      },
      [tmax](const Vec& u) {
        double th = std::acos(std::clamp(u(2), -1.0, 1.0));
        return th >= M_PI - tmax && th <= M_PI - 1e-6;
      }};
  cover.chart_coords = {[](const Vec& u) { return sphere_to_angles(u); },
                        [](const Vec& u) { return sphere_to_angles(u); }};
  auto lift = [](const Vec& x) {
    double th = x(0), phi = x(1);
    Vec u(3);
    u << std::sin(th) * std::cos(phi), std::sin(th) * std::sin(phi), std::cos(th);
    return u;
  };
  cover.chart_to_global = {lift, lift};
  return cover;
}

Cocycle monopole_like_cocycle(double k) {
  Cocycle c;
  c.cover = sphere_two_chart_cover();
  c.group = LieGroupSpec::u1();
  auto group = c.group;
  c.transition = [k, group](int a, int b, const Vec& u) {
    CMat m(1, 1);
    if (a == b) {
      m(0, 0) = 1.0;
      return GroupElement{group, m};
    }
    double phi = std::atan2(u(1), u(0));
    if (phi < 0) phi += 2.0 * M_PI;
    double sgn = (a == 0 && b == 1) ? 1.0 : -1.0;  // g_SN = g_NS^{-1}
    m(0, 0) = std::exp(Complex(0.0, sgn * k * phi));
    return GroupElement{group, m};
  };
  return c;
}

Cocycle build_monopole_bundle(double k) {
  if (std::abs(k - std::round(k)) > 1e-12)
    throw std::invalid_argument("build_monopole_bundle: k must be an integer (Dirac quantisation)");
  return monopole_like_cocycle(std::round(k));
}

Cocycle trivial_cocycle(const Chart& chart, const LieGroupSpec& group) {
  Cocycle c;
  c.cover.charts = {chart};
  Vec lo = chart.lo, hi = chart.hi;
  // Sample a bounded window of unbounded charts.
  for (int i = 0; i < chart.dim; ++i) {
    if (!std::isfinite(lo(i)) || lo(i) < -1e3) lo(i) = -1.0;
    if (!std::isfinite(hi(i)) || hi(i) > 1e3) hi(i) = 1.0;
  }
  c.cover.sample_region = [lo, hi](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    Vec x(lo.size());
    for (int i = 0; i < lo.size(); ++i) x(i) = lo(i) + ud(rng) * (hi(i) - lo(i));
    return x;
  };
  c.cover.chart_contains = {[chart](const Vec& x) { return chart.contains(x); }};
  c.cover.chart_coords = {[](const Vec& x) { return x; }};
  c.cover.chart_to_global = {[](const Vec& x) { return x; }};
  c.group = group;
  auto g = group;
  c.transition = [g](int, int, const Vec&) { return GroupElement{g, g.identity()}; };
  return c;
}

}  // namespace gaugekit
