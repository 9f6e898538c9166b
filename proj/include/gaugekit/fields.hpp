#ifndef GAUGEKIT_FIELDS_HPP
#define GAUGEKIT_FIELDS_HPP

#include <map>

#include "gaugekit/connection.hpp"
#include "gaugekit/dynamics.hpp"

namespace gaugekit {

/// Electromagnetic field data in an observer frame: F as a real
/// antisymmetric matrix field (lower indices) and the source covector j.
struct EMField {
  std::function<Mat(const Vec&)> F;
  std::function<Vec(const Vec&)> j;  // may be null (vacuum)
};

/// Frame assembly F_{0i} = E_i, F_{12} = -B_3, F_{13} = B_2, F_{23} = -B_1.
EMField maxwell_F_from_EB(const std::function<Eigen::Vector3d(const Vec&)>& E,
                          const std::function<Eigen::Vector3d(const Vec&)>& B);

/// (||dF||, ||delta F - j||) at x; an independent scalar-forms code path
/// (explicit index loops, not the algebra-valued machinery).
std::pair<double, double> maxwell_residuals(const EMField& em, const VolumeData& vol, const Vec& x,
                                            double fd_step = 1e-4);

/// T = (1/4pi) ( tr^{2,4} F (x) F - (1/4) g tr tr F (x) F ); symmetric and
/// trace-free in dimension 4.
Mat em_stress_energy(const EMField& em, const MetricField& g, const Vec& x);

/// tr^{1,2} nabla T at x (divergence residual of a stress tensor field).
Vec stress_divergence(const MetricField& g, const std::function<Mat(const Vec&)>& T, const Vec& x,
                      double fd_step = 1e-4);

/// || delta^omega F - J || at x. Pass a zero 1-form for vacuum.
double yang_mills_residual(const LocalConnectionForm& conn, int chart, const VolumeData& vol,
                           const AlgebraValuedForm& J, const Vec& x, double fd_step = 1e-3);

/// || delta^omega J || at x.
double charge_conservation_residual(const LocalConnectionForm& conn, int chart,
                                    const VolumeData& vol, const AlgebraValuedForm& J, const Vec& x,
                                    double fd_step = 1e-3);

/// Self-action density -1/2 sum_{i<j} k(F_ij, F^{ij}), indices raised by g.
double ym_action_density(const LocalConnectionForm& conn, int chart, const VolumeData& vol,
                         const Vec& x);

/// Scalar curvature constant of the structure group's bi-invariant metric
/// in the orthonormal normalization: 0 for U(1), 3/2 for SU(2) and SO(3).
double fibre_scalar_curvature(const LieGroupSpec& spec);

struct ScalarCurvatureReport {
  double S_h = 0;        // scalar curvature of the assembled KK metric
  double S_g = 0;        // base scalar curvature
  double coupling = 0;   // (1/2) sum_{i<j} k(F_ij, F^{ij})
  double S_k = 0;        // fibre constant
  double gap = 0;        // | S_h - S_g + coupling - S_k |
};

/// Two-sided check of S_h = S_g - (1/2)(g k)(F, F) + S_k at a base point
/// (fibre coordinates 0). S_h comes from finite-difference curvature of the
/// assembled total metric, the right side from independent contractions.
ScalarCurvatureReport scalar_curvature_decomposition_check(const MetricField& g,
                                                           const LocalConnectionForm& conn,
                                                           int chart, const Vec& x,
                                                           double fd_step = 2e-3);

/// Per-identity residual report with max-reduction merging.
struct ResidualReport {
  struct Entry {
    double max_abs = 0;
    int samples = 0;
    double fd_step = 0;
  };
  std::map<std::string, Entry> entries;
  void record(const std::string& name, double value, double fd_step);
  void merge(const ResidualReport& other);
};

}  // namespace gaugekit

#endif
