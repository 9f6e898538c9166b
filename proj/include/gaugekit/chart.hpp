#ifndef GAUGEKIT_CHART_HPP
#define GAUGEKIT_CHART_HPP

#include <string>
#include <vector>

#include "gaugekit/linalg.hpp"

namespace gaugekit {

/// Coordinate chart with an axis-aligned box domain. Coordinates may be
/// periodic (period > 0), in which case membership wraps and cocycle
/// validation probes single-valuedness across the seam.
struct Chart {
  std::string id;
  int dim = 0;
  Vec lo, hi;
  std::vector<double> period;  // 0 = aperiodic
  std::vector<std::string> coord_names;

  Chart() = default;
  Chart(std::string id_, Vec lo_, Vec hi_)
      : id(std::move(id_)), dim(static_cast<int>(lo_.size())), lo(std::move(lo_)), hi(std::move(hi_)) {
    period.assign(dim, 0.0);
  }

  static Chart box(const std::string& id, const Vec& lo, const Vec& hi) { return Chart(id, lo, hi); }

  bool contains(const Vec& x, double margin = 0.0) const {
    if (x.size() != dim) return false;
    for (int i = 0; i < dim; ++i) {
      double v = x(i);
      if (period[i] > 0) continue;  // periodic coordinates are unconstrained
      if (v < lo(i) + margin || v > hi(i) - margin) return false;
    }
    return true;
  }

  void require_interior(const Vec& x, double margin) const {
    if (!contains(x, margin))
      throw std::domain_error("chart '" + id + "': point outside domain (margin " +
                              std::to_string(margin) + ")");
  }
};

}  // namespace gaugekit

#endif
