#ifndef GAUGEKIT_METRIC_HPP
#define GAUGEKIT_METRIC_HPP

#include <functional>
#include <string>

#include "gaugekit/chart.hpp"
#include "gaugekit/linalg.hpp"

namespace gaugekit {

/// Pseudo-Riemannian metric as a chart-local callback. `signature` counts
/// (positive, negative) eigenvalue signs. Derivatives come from the
/// analytic hook when registered, otherwise central finite differences
/// with step fd_step * (1 + |x_i|) per coordinate.
struct MetricField {
  Chart chart;
  int sig_pos = 0, sig_neg = 0;
  std::function<Mat(const Vec&)> eval;
  // Optional: derivs[i] = d g / d x^i at x.
  std::function<std::vector<Mat>(const Vec&)> analytic_derivative;
  double fd_step = 1e-5;

  int dim() const { return chart.dim; }
  bool lorentzian() const { return sig_neg > 0; }
  double metric_sign() const { return (sig_neg % 2 == 0) ? 1.0 : -1.0; }  // sign of det g
};

/// Metric evaluation with symmetry and conditioning guards.
Mat metric_at(const MetricField& g, const Vec& x);

/// Inverse metric; throws if cond(g) >= 1e12.
Mat metric_inverse_at(const MetricField& g, const Vec& x);

/// d g / d x^i for all i (analytic or second-order central differences).
std::vector<Mat> metric_derivatives(const MetricField& g, const Vec& x);

/// Checks symmetry / signature / conditioning at a sampled point.
void validate_metric_point(const MetricField& g, const Vec& x);

/// Volume data for Hodge-star operations: metric plus chart orientation.
struct VolumeData {
  MetricField metric;
  double orientation = 1.0;  // +1 or -1
};

/// Named catalog: "euclidean2", "euclidean3", "euclidean4", "minkowski4",
/// "sphere2", "schwarzschild_ext". Throws std::out_of_range on misses.
MetricField metric_catalog(const std::string& name);
bool metric_catalog_has(const std::string& name);

}  // namespace gaugekit

#endif
