#ifndef GAUGEKIT_CONNECTION_HPP
#define GAUGEKIT_CONNECTION_HPP

#include "gaugekit/atlas.hpp"
#include "gaugekit/forms.hpp"

namespace gaugekit {

/// Principal connection in chart-local data: per chart alpha the pullback
/// A_alpha of the connection form by the canonical gauge, stored as a
/// degree-1 algebra-valued form over the chart coordinates. Compatible
/// charts satisfy A_b = Ad(g_ab^{-1}) A_a + g_ab^{-1} dg_ab on overlaps.
/// Charts of a cover share coordinate frames on overlaps (the covers built
/// here are either single-chart boxes or the two polar sphere charts in
/// common (theta, phi) coordinates).
struct LocalConnectionForm {
  Cocycle cocycle;
  std::vector<AlgebraValuedForm> local;  // indexed like cocycle.cover.charts

  const LieGroupSpec& algebra() const { return cocycle.group; }
  const AlgebraValuedForm& form(int chart) const { return local.at(chart); }
  int n_charts() const { return static_cast<int>(local.size()); }

  /// A_alpha(x) contracted with a tangent vector: sum_i v^i A_i(x).
  AlgebraElement contract(int chart, const Vec& x, const Vec& v) const;
};

/// Curvature F = dA + (1/2)[A, A]; componentwise
/// F_ij = d_i A_j - d_j A_i + [A_i, A_j].
AlgebraValuedForm curvature_form(const LocalConnectionForm& conn, int chart);

/// || A_b - Ad(g_ab^{-1}) A_a - g_ab^{-1} dg_ab || at a global overlap
/// point; dg by fourth-order central differences in chart-a coordinates.
double overlap_residual(const LocalConnectionForm& conn, int chart_a, int chart_b,
                        const Vec& global);

/// d^omega tau = d tau + [A, tau] for horizontal equivariant tau.
/// Returns the zero form when the degree overflows the base dimension.
AlgebraValuedForm covariant_differential(const LocalConnectionForm& conn, int chart,
                                         const AlgebraValuedForm& tau);

/// Coefficient norm of (d^omega F)(x); zero up to finite-difference error
/// for every connection.
double bianchi_residual(const LocalConnectionForm& conn, int chart, const Vec& x,
                        double fd_step = 1e-4);

/// Form-level Hodge star of a field.
AlgebraValuedForm hodge_star(const VolumeData& vol, const AlgebraValuedForm& f);

/// delta^omega = sign(g) (-1)^{n k + n + 1} * d^omega * ; k = deg(tau) >= 1.
AlgebraValuedForm covariant_codifferential(const VolumeData& vol, const LocalConnectionForm& conn,
                                           int chart, const AlgebraValuedForm& tau);

/// Chart-local gauge transformation data applied to connections:
/// A' = Ad(tau^{-1}) A + tau^{-1} d tau, with d tau by finite differences.
LocalConnectionForm apply_gauge_to_connection(const GaugeTransformation& t,
                                              const LocalConnectionForm& conn,
                                              double fd_step = 1e-6);

/// Named catalog over a given base chart:
///   "zero"                     flat connection (group defaults to U(1))
///   "monopole(k)"              two-chart Dirac monopole, its own cover
///   "constant_su2(a,b)"        A_x = a E_1, A_y = b E_2 constant
///   "poly_su2_r4"              polynomial su(2) connection on R^4
///   "coulomb_u1(q)"            A = -i (q/r) dt on a 4d chart (t,x,y,z)
///   "constant_B_u1(B)"         A = -i B x dy
/// "monopole_N/S(k)" is accepted as an alias of "monopole(k)".
LocalConnectionForm connection_catalog(const std::string& name, const Chart& base_chart);
bool connection_catalog_has(const std::string& name);

/// Convenience: single-chart connection over a trivial cocycle.
LocalConnectionForm single_chart_connection(AlgebraValuedForm a);

}  // namespace gaugekit

#endif
