#ifndef GAUGEKIT_ATLAS_HPP
#define GAUGEKIT_ATLAS_HPP

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "gaugekit/chart.hpp"
#include "gaugekit/lie.hpp"

namespace gaugekit {

/// Finite open cover of a base region. The region carries a sampler (for
/// rejection-style coverage checks) and per-chart membership/coordinate
/// maps from a shared global point representation (e.g. unit vectors in
/// R^3 for the sphere, plain coordinates for box regions).
struct Cover {
  std::vector<Chart> charts;
  std::function<Vec(std::mt19937_64&)> sample_region;                 // global point
  std::vector<std::function<bool(const Vec&)>> chart_contains;       // per chart
  std::vector<std::function<Vec(const Vec&)>> chart_coords;          // global -> local
  std::vector<std::function<Vec(const Vec&)>> chart_to_global;       // local -> global

  int chart_index(const std::string& id) const;
  bool in_overlap(int a, int b, const Vec& global) const {
    return chart_contains[a](global) && chart_contains[b](global);
  }
};

/// Cech G-cocycle: transition maps g_ab on overlaps, evaluated at a global
/// point. The stored maps must satisfy g_aa = e and g_ab g_bc = g_ac on
/// triple overlaps; validate_cocycle probes both on random samples.
struct Cocycle {
  Cover cover;
  LieGroupSpec group;
  std::function<GroupElement(int a, int b, const Vec& global)> transition;

  GroupElement g(int a, int b, const Vec& global) const { return transition(a, b, global); }
};

struct CocycleReport {
  double max_identity_violation = 0;
  double max_cocycle_violation = 0;
  double max_seam_jump = 0;  // single-valuedness probe across periodic seams
  int samples = 0;
  bool uncovered_point_found = false;
  bool pass(double tol = 1e-10) const {
    return !uncovered_point_found && max_identity_violation < tol && max_cocycle_violation < tol &&
           max_seam_jump < tol;
  }
};

constexpr uint64_t kCocycleSeed = 0xC0C1C1Eull;

/// Samples the base region, checking coverage, the identity/inverse/triple
/// conditions, and single-valuedness of transitions across periodic
/// coordinate seams.
CocycleReport validate_cocycle(const Cocycle& c, int samples = 10000, uint64_t seed = kCocycleSeed);

/// Section of an associated bundle in local data: per-chart fibre values
/// with the compatibility value_a(m) = action(g_ab(m), value_b(m)).
struct GaugedSection {
  Cocycle cocycle;
  // local_value(chart index, global point) -> fibre value in W = C^k
  std::function<CVec(int, const Vec&)> local_value;
  // left G-action on W; defaults to the defining matrix action.
  std::function<CVec(const GroupElement&, const CVec&)> action;

  CVec value(int chart, const Vec& global) const { return local_value(chart, global); }
  CVec act(const GroupElement& g, const CVec& w) const {
    return action ? action(g, w) : CVec(g.mat * w);
  }
};

/// Gauge transformation in local data tau_a, with the conjugation overlap
/// law tau_a = g_ab tau_b g_ab^{-1}.
struct GaugeTransformation {
  Cocycle cocycle;
  std::function<GroupElement(int, const Vec&)> local_tau;
};

/// Pushes a local fibre value from chart a to chart b at a point of the
/// overlap: value_b = action(g_ba(m), value_a).
CVec section_push(const GaugedSection& s, int from_chart, int to_chart, const Vec& global);

/// Pullback action of a gauge transformation on a section:
/// value'_a(m) = action(tau_a(m)^{-1}, value_a(m)).
GaugedSection apply_gauge(const GaugeTransformation& t, const GaugedSection& s);

/// Max overlap-compatibility violation of a section over random samples.
double section_overlap_violation(const GaugedSection& s, int samples = 300,
                                 uint64_t seed = kCocycleSeed);

/// Max conjugation-law violation of a gauge transformation over samples.
double gauge_overlap_violation(const GaugeTransformation& t, int samples = 300,
                               uint64_t seed = kCocycleSeed);

/// Two-chart cover of the unit sphere by polar caps (theta < theta_max
/// from either pole), shared coordinates (theta, phi).
Cover sphere_two_chart_cover(double theta_max = 2.0);

/// Dirac monopole bundle: U(1) cocycle on the two-chart sphere cover with
/// g_NS(m) = exp(i k phi). Rejects non-integer k (quantisation).
Cocycle build_monopole_bundle(double k);

/// Same transition data without the quantisation guard; for non-integer k
/// the result is not a cocycle and validate_cocycle reports the seam jump.
Cocycle monopole_like_cocycle(double k);

/// Trivial cocycle (g_ab = e) over a single box chart.
Cocycle trivial_cocycle(const Chart& chart, const LieGroupSpec& group);

}  // namespace gaugekit

#endif
