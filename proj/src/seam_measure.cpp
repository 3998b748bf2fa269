#include "seamlab/seam_measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seamlab {

namespace {

void check_disjoint(const std::vector<CircleArc>& arcs) {
  std::vector<std::pair<double, double>> spans;
  for (const CircleArc& a : arcs) {
    if (a.length <= 0.0 || a.length > kTwoPi + 1e-12)
      throw std::domain_error("seam_h1: arc length must lie in (0, 2pi]");
    double s = wrap_angle(a.start);
    double e = s + a.length;
    if (e <= kTwoPi) {
      spans.push_back({s, e});
    } else {
      spans.push_back({s, kTwoPi});
      spans.push_back({0.0, e - kTwoPi});
    }
  }
  std::sort(spans.begin(), spans.end());
  for (size_t i = 0; i + 1 < spans.size(); ++i)
    if (spans[i + 1].first < spans[i].second - 1e-12)
      throw std::domain_error("seam_h1: arcs overlap");
}

}  // namespace

double seam_h1(const GluedMetric& gm, const std::vector<CircleArc>& arcs) {
  check_disjoint(arcs);
  double total = 0.0;
  for (const CircleArc& a : arcs)
    total += seam_density_integral(gm.homeo(), a.start, a.start + a.length);
  return total;
}

double nu_abs(const GluedMetric& gm, const std::vector<CircleArc>& arcs) {
  // The singular support coincides with exact zeros of the stored density,
  // so the chi_{S^1 \ B0} factor is a no-op here.
  return seam_h1(gm, arcs);
}

std::vector<WindowVerdict> mutual_singularity_scan(const GluedMetric& gm, double window) {
  if (!(window > 0.0) || window > kTwoPi)
    throw std::domain_error("mutual_singularity_scan: window in (0, 2pi]");
  std::vector<WindowVerdict> out;
  int n = std::max(1, static_cast<int>(std::ceil(kTwoPi / window)));
  for (int i = 0; i < n; ++i) {
    double s = kTwoPi * i / n;
    double len = std::min(window, kTwoPi - s);
    WindowVerdict v;
    v.window = {s, len};
    v.h1 = gm.seam_measure_ccw(s, s + len);
    v.collapsing = v.h1 < 1e-9 * len;
    out.push_back(v);
  }
  return out;
}

double polyline_seam_length(const GluedMetric& gm, const std::vector<CircleArc>& arcs,
                            int resolution) {
  if (resolution < 2) throw std::domain_error("polyline_seam_length: resolution >= 2");
  double total = 0.0;
  for (const CircleArc& a : arcs) {
    double acc = 0.0;
    for (int i = 0; i < resolution; ++i) {
      double t0 = a.start + a.length * i / resolution;
      double t1 = a.start + a.length * (i + 1) / resolution;
      acc += gm.glued_distance(gm.seam_point(t0), gm.seam_point(t1), 64);
    }
    total += acc;
  }
  return total;
}

}  // namespace seamlab
