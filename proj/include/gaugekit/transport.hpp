#ifndef GAUGEKIT_TRANSPORT_HPP
#define GAUGEKIT_TRANSPORT_HPP

#include "gaugekit/connection.hpp"
#include "gaugekit/geometry.hpp"

namespace gaugekit {

/// Piecewise-smooth curve through chart territory. Segments carry the chart
/// index and exact position/velocity evaluators over [t0, t1]; curves built
/// from raw samples get cubic-Hermite evaluators. Consecutive segments must
/// agree at switch times (checked by transport).
struct CurveSegment {
  int chart = 0;
  double t0 = 0.0, t1 = 1.0;
  std::function<Vec(double)> pos;
  std::function<Vec(double)> vel;  // optional; high-order FD of pos when absent

  Vec position(double t) const { return pos(t); }
  Vec velocity(double t) const;
};

struct SampledCurve {
  std::vector<CurveSegment> segments;

  double t_start() const { return segments.front().t0; }
  double t_end() const { return segments.back().t1; }
  Vec start() const { return segments.front().pos(segments.front().t0); }
  Vec end() const { return segments.back().pos(segments.back().t1); }

  /// Uniform samples of one segment (diagnostics / CSV).
  PathSamples sample_segment(int seg, int n) const;
};

CurveSegment segment_from_samples(int chart, const Vec& t, const std::vector<Vec>& points);

SampledCurve single_segment_curve(int chart, double t0, double t1, std::function<Vec(double)> pos,
                                  std::function<Vec(double)> vel = nullptr);

SampledCurve reversed(const SampledCurve& c);
SampledCurve concatenated(const SampledCurve& first, const SampledCurve& second);

/// Loop catalog (anchored at x0 where applicable):
///   "square(s)"       axis square in coords (0,1), corner x0, side s
///   "rect(i,j,s,t)"   rectangle in coords (i,j) centered at x0
///   "equator"         theta = pi/2, phi from 0 to 2 pi (sphere charts)
///   "octant_triangle" equator/meridian octant loop with a small polar clip
SampledCurve loop_catalog(const std::string& name, const Chart& chart, const Vec& x0);
bool loop_catalog_has(const std::string& name);

/// Linear transport problem: fibre evolves by Phi' = -M(chart, x, x') Phi,
/// with a fibre switch factor applied at chart changes.
struct LinearTransportOde {
  int fibre_dim = 0;
  std::function<CMat(int, const Vec&, const Vec&)> coeff;
  std::function<CMat(int, int, const Vec&)> switch_map;  // (from, to, global)
  std::function<Vec(int, const Vec&)> to_global;         // chart-local -> global
};

/// Tangent-bundle transport of a metric's Levi-Civita connection:
/// M = Gamma(c') with (Gamma(c'))^k_j = Gamma^k_{ij} c'^i.
LinearTransportOde transport_ode_from_metric(const MetricField& g);

/// Transport in the defining representation of a gauge connection:
/// M = A(c'), switch factor g_{to,from}.
LinearTransportOde transport_ode_from_connection(const LocalConnectionForm& conn);

struct TransportResult {
  CVec value;             // final fibre vector (vector transport)
  GroupElement element;   // final group element (group lifts)
  double constraint_drift = 0.0;
  double step_check = 0.0;     // endpoint change under step halving
  bool flagged = false;        // step_check >= 1e-7
  int steps = 0;
};

/// RK4 with fixed steps (steps_per_unit per unit of curve parameter) and a
/// step-halving endpoint check; the halved-step result is returned.
TransportResult parallel_transport_vector(const LinearTransportOde& ode, const SampledCurve& curve,
                                          const CVec& v0, int steps_per_unit = 1000);

/// Group-element horizontal lift g' = -A(c') g with reprojection every 50
/// steps. Right-translation equivariance holds by linearity.
TransportResult horizontal_lift_group(const LocalConnectionForm& conn, const SampledCurve& curve,
                                      const GroupElement& g0, int steps_per_unit = 1000);

/// Holonomy of a closed loop (endpoints equal to 1e-10 in a common chart).
GroupElement holonomy(const LocalConnectionForm& conn, const SampledCurve& loop,
                      int steps_per_unit = 1000);

/// log(holonomy of the coordinate rectangle centered at x)/(s t);
/// converges to -F_ij(x) at second order in the side lengths.
AlgebraElement infinitesimal_holonomy(const LocalConnectionForm& conn, int chart, const Vec& x,
                                      int i, int j, double s, double t,
                                      int steps_per_unit = 2000);

struct SpanCheckReport {
  int rank_holonomy = 0;
  int rank_curvature = 0;
  bool included = false;  // span(log hol) inside span(F samples)
  int skipped_loops = 0;  // log branch failures
};

/// Ambrose-Singer style inclusion test: the span of holonomy logarithms
/// must lie inside the span of curvature values. Rank decisions use an
/// absolute singular-value tolerance, so loops should be small enough that
/// sub-leading commutator terms in log(hol) fall below it.
SpanCheckReport ambrose_singer_span_check(const LocalConnectionForm& conn, int chart,
                                          const std::vector<SampledCurve>& loops,
                                          const std::vector<Vec>& sample_points,
                                          double rank_tol = 1e-8, int steps_per_unit = 1000);

/// Covariant derivative of a section in chart-local data:
/// (nabla_X sigma)_e = d sigma_e(X) + A(X) sigma_e, directional derivative
/// by central differences.
CVec covariant_derivative_section(const LocalConnectionForm& conn, int chart,
                                  const std::function<CVec(const Vec&)>& sigma, const Vec& X,
                                  const Vec& m, double fd_step = 1e-6);

/// R(d_i, d_j) sigma = nabla_i nabla_j sigma - nabla_j nabla_i sigma for
/// coordinate fields (two finite-difference layers); matches the curvature
/// form acting on sigma.
CVec affine_curvature_commutator(const LocalConnectionForm& conn, int chart,
                                 const std::function<CVec(const Vec&)>& sigma, int i, int j,
                                 const Vec& m, double fd_step = 1e-4);

}  // namespace gaugekit

#endif
