#ifndef GAUGEKIT_DYNAMICS_HPP
#define GAUGEKIT_DYNAMICS_HPP

#include <string>

#include "gaugekit/connection.hpp"
#include "gaugekit/geometry.hpp"

namespace gaugekit {

/// Time-stamped integration record. Q components are coordinates of the
/// conserved charge in the orthonormal algebra basis (empty when the run
/// has no gauge sector). `energy` is (1/2) g(c', c') in the run's own
/// metric; `constraint_drift` is |energy(t) - energy(0)|.
struct Trajectory {
  std::vector<double> t;
  std::vector<std::string> chart;
  std::vector<Vec> x;
  std::vector<Vec> v;
  std::vector<Vec> Q;
  std::vector<double> energy;
  std::vector<double> constraint_drift;
  bool exited = false;  // left the chart domain; record truncated

  int samples() const { return static_cast<int>(t.size()); }
  PathSamples base_path() const;
};

struct ChargeDiagnostics {
  std::vector<Vec> Q;
  double drift = 0.0;  // max ||Q(t) - Q(0)||
};

/// State for Kaluza-Klein runs: base position/velocity plus fibre
/// coordinates (exponential coordinates on G) and their rates.
struct ParticleState {
  std::string chart;
  Vec x, v;
  Vec fibre;       // xi with g = exp(sum xi_a E_a); empty = identity
  Vec fibre_rate;  // d xi / dt
};

/// Geodesic integration: RK4 on x' = v, v'^k = -Gamma^k_{ij} v^i v^j.
Trajectory geodesic_integrate(const MetricField& g, const Vec& x0, const Vec& v0, double t0,
                              double t1, int steps);

/// Kaluza-Klein metric h = pi^* g + k(omega (x) omega) assembled in the
/// local trivialization chart x G, exponential coordinates xi on G and the
/// left Maurer-Cartan frame:
///   h = [ g + alpha^T alpha   alpha^T Theta ]
///       [ Theta^T alpha       Theta^T Theta ]
/// with alpha_{ai} = <E_a, Ad(g^{-1}) A_i> and Theta the dexp matrix of the
/// Maurer-Cartan form in exponential coordinates.
Mat kk_metric_eval(const MetricField& g, const LocalConnectionForm& conn, int chart, const Vec& x,
                   const Vec& xi);

/// The same assembly packaged as a MetricField over (x, xi), for curvature
/// evaluation and geodesic integration on the total space.
MetricField kk_total_metric(const MetricField& g, const LocalConnectionForm& conn, int chart,
                            double fibre_box = 2.0);

/// Charge of a KK state: Q = Ad(g^{-1}) A(v) + theta(xi').
AlgebraElement kk_charge(const LocalConnectionForm& conn, int chart, const ParticleState& s);

/// Fibre rate realizing a prescribed charge Q at the given base state.
Vec kk_initial_fibre_rate(const LocalConnectionForm& conn, int chart, const Vec& x, const Vec& v,
                          const AlgebraElement& Q);

/// Geodesic of the KK metric; records Q(t) and its drift.
std::pair<Trajectory, ChargeDiagnostics> kk_geodesic(const MetricField& g,
                                                     const LocalConnectionForm& conn, int chart,
                                                     const ParticleState& state, double t0,
                                                     double t1, int steps);

/// Charged-particle motion under a prescribed electromagnetic tensor:
///   v'^k = -Gamma^k_{ij} v^i v^j - (q/m) g^{ki} F_{ij} v^j.
/// The F slot pairing (force_k = -(q/m) F_{kj} v^j) is calibrated so that
/// with F = i * curvature and q/m = -i Q the run matches the projection of
/// the Kaluza-Klein geodesic with charge Q.
Trajectory lorentz_force_integrate(const MetricField& g, const std::function<Mat(const Vec&)>& F,
                                   double q_over_m, const Vec& x0, const Vec& v0, double t0,
                                   double t1, int steps);

/// Exact CSV column order:
/// t, chart, x0..x{n-1}, v0..v{n-1}, Q_0..Q_{d-1}, energy, constraint_drift.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

}  // namespace gaugekit

#endif
