#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "seamlab/circle_homeo.hpp"
#include "seamlab/sphere.hpp"

namespace seamlab {

/// Radial extension of a circle homeomorphism on the north stereographic
/// chart: r e^{i theta} -> r e^{i G(theta)}. Fixes the origin (north pole)
/// and restricts to g on the unit circle; its pointwise distortion in the
/// round metric is max{|G'|, 1/|G'|}, independent of r.
class RadialExtension {
 public:
  explicit RadialExtension(CircleHomeo g) : g_(std::move(g)) {}

  const CircleHomeo& boundary() const { return g_; }

  DiskPoint apply(const DiskPoint& p) const;
  SpherePoint apply_sphere(const SpherePoint& north_point) const;

  /// Pointwise distortion K(p); nullopt where the lift is not differentiable
  /// and at the pole for non-isometric g. +infinity where the speed vanishes.
  std::optional<double> distortion(const DiskPoint& p) const;

 private:
  CircleHomeo g_;
};

using DiskMap = std::function<DiskPoint(const DiskPoint&)>;

/// Sampled bi-Lipschitz constant of a self-map of the closed unit disk in
/// the spherical (pulled back) metric: sup of the two-sided distance ratios
/// over structured pairs at n_samples base angles.
double sampled_bilip(const DiskMap& map, int n_samples);

/// Distortion gauge A on [1, infinity).
struct Gauge {
  std::string name;
  std::function<double(double)> A;
};

/// A(t) = p (t - 1): exponentially integrable distortion of order p.
Gauge exp_gauge(double p);

/// Piecewise-linear gauge through (t, A) knots, constant beyond the last knot.
Gauge table_gauge(std::vector<std::pair<double, double>> knots);

struct GaugeCheck {
  bool admissible = false;
  std::string violation;   // empty when admissible
  double t0 = 1.0;         // detected onset of the monotone t A'(t) tail
};

/// Checks the admissibility conditions: A(1) = 0, strict growth, divergence
/// of int t^-2 A(t) dt, and t A'(t) increasing to infinity for large t.
GaugeCheck check_gauge(const Gauge& gauge);

struct IntegrabilityReport {
  std::vector<int> resolutions;
  std::vector<double> values;
  bool divergent = false;
  double value = 0.0;  // finest-level value
};

/// Integral of e^{A(K)} over the hemisphere (conformal area weight) on a
/// dyadic ladder of angular quadrature resolutions ending at
/// quadrature_resolution; declared divergent when three successive
/// refinements each grow the value by >= 1.5x. Rejects non-admissible
/// gauges with the violated condition named.
IntegrabilityReport exp_integrability(const RadialExtension& ext, const Gauge& gauge,
                                      int quadrature_resolution);

/// Bisection for the largest p with a finite verdict for A(t) = p(t-1) on
/// the given quadrature ladder.
double exp_threshold(const RadialExtension& ext, int quadrature_resolution, double p_lo = 1e-4,
                     double p_hi = 64.0);

/// Beurling-Ahlfors extension of g, transported from the upper half-plane to
/// the north chart by the Moebius boundary chart; g is conjugated to fix the
/// chart's point at infinity, and the residual rotation is reapplied as an
/// isometry. The boundary restriction equals g exactly.
class BeurlingAhlforsExtension {
 public:
  explicit BeurlingAhlforsExtension(CircleHomeo g, int quad_panels = 192);

  DiskPoint apply(const DiskPoint& p) const;

  /// Distortion at an interior point, from the closed-form differential of
  /// the half-plane averages (distortion is invariant under the conformal
  /// charts, so no finite differences are involved).
  double distortion(const DiskPoint& p) const;

  DiskMap as_map() const;

 private:
  CircleHomeo g_;
  double spin_ = 0.0;  // G(pi) - pi, reapplied after the half-plane extension
  int panels_;
};

/// Distortion of an arbitrary chart self-map from a central finite-difference
/// differential, measured in the round metric frames.
double finite_difference_distortion(const DiskMap& map, const DiskPoint& p, double h = 1e-5);

}  // namespace seamlab
