#ifndef GAUGEKIT_GEOMETRY_HPP
#define GAUGEKIT_GEOMETRY_HPP

#include <functional>

#include "gaugekit/metric.hpp"

namespace gaugekit {

/// Christoffel symbols of the second kind at a point, Gamma^k_{ij},
/// symmetric in (i, j) for the Levi-Civita connection. Sign convention:
/// the geodesic equation reads x''^k = -Gamma^k_{ij} x'^i x'^j, so on the
/// unit sphere Gamma^theta_{phi phi} = -sin(theta) cos(theta).
struct ChristoffelTensor {
  Vec point;
  Tensor3 gamma;  // (k, i, j)
};

/// Riemann tensor R^l_{kij} plus its Ricci and scalar contractions.
/// R(d_i, d_j) d_k = R^l_{kij} d_l;  Ric_{kj} = R^i_{kij};  S = g^{kj} Ric_{kj}.
struct CurvatureTensor {
  Vec point;
  Tensor4 riemann;  // (l, k, i, j)
  Mat ricci;
  double scalar = 0;
};

ChristoffelTensor levi_civita_christoffel(const MetricField& g, const Vec& x);

/// Curvature from R^l_{kij} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
///                           + Gamma^l_{im} Gamma^m_{jk} - Gamma^l_{jm} Gamma^m_{ik};
/// the Gamma derivatives are central differences with step fd_step.
CurvatureTensor riemann_curvature(const MetricField& g, const Vec& x, double fd_step = 1e-5);

/// G(x) - 8 pi T(x) with G = Ric - (1/2) S g.
Mat einstein_residual(const MetricField& g, const std::function<Mat(const Vec&)>& stress_energy,
                      const Vec& x, double fd_step = 1e-5);

/// Torsion T^k_{ij} = Gamma^k_{ij} - Gamma^k_{ji} of an arbitrary
/// connection-coefficient field.
Tensor3 torsion(const std::function<Tensor3(const Vec&)>& gamma_field, const Vec& x);

/// Uniformly sampled path in a single chart.
struct PathSamples {
  Vec t;
  std::vector<Vec> x;
};

/// Velocity samples by central differences on the grid (one-sided second
/// order at the ends).
std::vector<Vec> path_velocity(const PathSamples& path);

/// Energy S_g(c) = 1/2 int g(c', c') dt by composite Simpson quadrature.
double energy_integral(const MetricField& g, const PathSamples& path);

/// First variation of the energy along a compactly supported variation r:
///   d/ds S_g(c + s r) = int [ -Tg(c')(c', r) - g(c'', r) + 1/2 Tg(r)(c', c') ] dt.
/// Vanishes on geodesics. Throws if r does not vanish at both endpoints.
double first_variation(const MetricField& g, const PathSamples& path, const std::vector<Vec>& r);

}  // namespace gaugekit

#endif
