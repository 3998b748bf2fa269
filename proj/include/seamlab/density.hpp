#pragma once

#include <vector>

#include "seamlab/glued_metric.hpp"

namespace seamlab {

/// Sharp lower bound for the one-sided area density at a seam point where the
/// metric speed is eps: f(eps) = arcsin(eps)/pi + sqrt(1-eps^2)/(pi eps).
/// Strictly decreasing on (0,1], f(1) = 1/2, f(eps) >= 1/(pi eps).
double f_bound(double eps);

/// Inverse of the density bound: L(C) = 1 / f^{-1}(C) for C >= 1/2.
/// L(1/2) = 1, L is increasing, and L(C) <= pi C.
double L_of_C(double C);

struct BallArea {
  double south = 0.0;
  double north = 0.0;

  double total() const { return south + north; }
};

/// Area of the closed glued ball B(seam point theta0, r), split by hemisphere.
/// Membership tests run the seam-anchored structural formula; the integral is
/// taken in Fermi coordinates around the equator (exact area element) with
/// `quadrature_resolution` columns per hemisphere. Requires 0 < r < pi/4.
BallArea ball_area(const GluedMetric& gm, double theta0, double r,
                   int quadrature_resolution = 1024);

struct DensityReport {
  double theta0 = 0.0;
  std::vector<double> radii;
  std::vector<double> south, north, total;
  std::vector<double> ratio;        // total / (pi r^2)
  std::vector<double> ratio_south;  // south / (pi r^2)
  std::vector<double> ratio_north;
  double C1 = 0.0, C2 = 0.0, C = 0.0;  // extrapolated liminf estimates
  bool estimate_only = true;           // liminf cannot be certified numerically
};

/// Ball areas over a decreasing radius ladder with Richardson extrapolation
/// of the density ratios; the liminf estimate is the minimum of the last
/// three extrapolants.
DensityReport density_sweep(const GluedMetric& gm, double theta0,
                            const std::vector<double>& radii,
                            int quadrature_resolution = 1024);

struct PipelineReport {
  std::vector<DensityReport> per_point;
  double C_prime = 0.0;      // max extrapolated density over the sample points
  double bound_pi_C = 0.0;   // pi C'
  double bound_improved = 0.0;  // (C' - 1/2) pi
  double bound_L = 0.0;         // L(C' - 1/2)
  double measured_bilip = 0.0;
  bool consistent = false;  // measured <= each bound (with the caller's slack)
};

/// Full constant pipeline: densities at the sample points, the three
/// certified bi-Lipschitz bounds for g, and the sampled constant of g.
PipelineReport theorem11_pipeline(const GluedMetric& gm, const std::vector<double>& sample_points,
                                  const std::vector<double>& radii, double slack = 0.05,
                                  int quadrature_resolution = 1024);

}  // namespace seamlab
