#pragma once

#include <string>
#include <vector>

#include "seamlab/glued_metric.hpp"

namespace seamlab {

/// Hausdorff-1 measure of the seam image of a union of disjoint arcs:
/// the integral of min{1, v_g} over the arcs. Throws std::domain_error if
/// the arcs overlap.
double seam_h1(const GluedMetric& gm, const std::vector<CircleArc>& arcs);

/// The Caratheodory comparison measure nu^ABS: min{1, v_g} restricted off the
/// singular support. Identical to seam_h1 on these representations (the
/// density already vanishes there); kept separate for cross-checking.
double nu_abs(const GluedMetric& gm, const std::vector<CircleArc>& arcs);

struct WindowVerdict {
  CircleArc window;
  double h1 = 0.0;
  bool collapsing = false;  // h1 below 1e-9 * window length
};

/// Slides a window of the given arc length over the seam and classifies each
/// position as collapsing or surviving.
std::vector<WindowVerdict> mutual_singularity_scan(const GluedMetric& gm, double window);

/// Length of the seam image of B measured as a polyline: the sum of glued
/// distances over a partition with `resolution` points per arc. A lower bound
/// of seam_h1 converging to it as the partition refines.
double polyline_seam_length(const GluedMetric& gm, const std::vector<CircleArc>& arcs,
                            int resolution);

}  // namespace seamlab
