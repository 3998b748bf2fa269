#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seamlab/sphere.hpp"

namespace seamlab {

/// Arc of the circle, [start, start + length) in radians, start in [0, 2pi),
/// 0 < length <= 2pi.
struct CircleArc {
  double start = 0.0;
  double length = 0.0;

  bool contains(double theta) const;
};

enum class HomeoFamily { Isometry, Power, Cantor, Pwl, Singular, Composed };

/// Orientation-preserving circle homeomorphism represented through its lift
/// G: R -> R with G(theta + 2pi) = G(theta) + 2pi and G strictly increasing.
///
/// The metric speed v_g (density of the absolutely continuous part of the
/// pullback g* H^1) is exposed as an evaluator. Arcs where v_g vanishes
/// identically and arcs carrying singular mass are tracked exactly; the
/// singular part itself is never sampled pointwise, only flagged.
class CircleHomeo {
 public:
  static CircleHomeo identity();
  static CircleHomeo rotation(double angle);

  /// Power-law family: h(x) = x^alpha (x >= 0), -(-x)^beta (x < 0) on [-1,1],
  /// extended periodically; the lift of g is theta -> pi h^{-1}(theta/pi).
  /// Requires 1 <= alpha <= beta.
  static CircleHomeo power(double alpha, double beta);

  /// Fat-Cantor family: E subset of [0,1] of measure `fraction` built to
  /// `levels` generations; the lift integrates the normalized density that
  /// vanishes on E (identity outside the unit arc). v_g is zero exactly on
  /// the E arcs. Requires fraction in (0,1), levels >= 1.
  static CircleHomeo cantor(double fraction, int levels);

  /// Fully singular family: lift is the CDF of a 2pi-periodic binary
  /// splitting measure (mass split bias:1-bias at each of `levels` dyadic
  /// generations). The absolutely continuous density is identically zero;
  /// all mass is singular.
  static CircleHomeo fully_singular(int levels = 22, double bias = 0.05);

  /// Piecewise-linear lift through strictly increasing breakpoints
  /// (theta_i, G_i) spanning exactly one period.
  static CircleHomeo piecewise_linear(std::vector<std::pair<double, double>> breakpoints);

  /// Composition: (a o b)(z) = a(b(z)).
  static CircleHomeo compose(const CircleHomeo& a, const CircleHomeo& b);

  HomeoFamily family() const;
  const std::string& describe() const;

  /// Lift value G(theta); defined for all real theta.
  double lift(double theta) const;

  /// Inverse lift G^{-1}(phi); closed form where available, otherwise
  /// monotone bisection to 1e-12.
  double inverse_lift(double phi) const;

  /// The image angle of an equator angle, wrapped to [0, 2pi).
  double apply_angle(double theta) const { return wrap_angle(lift(theta)); }

  SpherePoint apply(const SpherePoint& equator_pt) const;

  /// v_g(theta). Returns nullopt where undefined (breakpoints of piecewise
  /// families, jump angles of the power family); +infinity is a valid value.
  std::optional<double> speed(double theta) const;

  /// Arcs where v_g vanishes identically (exact zeros, no quadrature).
  const std::vector<CircleArc>& zero_arcs() const;

  /// Arcs carrying the singular part of g* H^1 (the pinned B0 set).
  const std::vector<CircleArc>& singular_arcs() const;

  double singular_mass() const;

  /// Sorted angles in [0, 2pi) where the integrand min{1, v_g} changes
  /// analytic piece (breakpoints, zero-arc endpoints, v = 1 crossings).
  const std::vector<double>& breakpoints() const;

  struct Impl;
  const Impl& impl() const { return *impl_; }

 private:
  explicit CircleHomeo(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

/// Metric speed v_g at theta; empty optional where undefined.
std::optional<double> metric_speed(const CircleHomeo& g, double theta);

struct BilipEstimate {
  double forward = 1.0;  // sup sigma(g x, g y) / sigma(x, y)
  double inverse = 1.0;  // sup sigma(x, y) / sigma(g x, g y)

  double combined() const { return forward > inverse ? forward : inverse; }
};

/// Sampled lower bound for the bi-Lipschitz constant of g, reported per
/// direction. Pairs are drawn at n_samples base angles with dyadic offsets.
BilipEstimate bilip_constant_directional(const CircleHomeo& g, int n_samples);

double bilip_constant(const CircleHomeo& g, int n_samples);

/// Lebesgue decomposition summary of g* H^1: uniform grid of v_g plus the
/// singular mass ledger. Total mass is 2pi for every homeomorphism.
struct LebesgueDecomposition {
  std::vector<double> grid_theta;
  std::vector<double> density;  // v_g samples (0 inside zero/singular arcs)
  std::vector<std::pair<CircleArc, double>> singular;
  double ac_mass = 0.0;
  double singular_mass = 0.0;

  double total_mass() const { return ac_mass + singular_mass; }
};

LebesgueDecomposition decompose(const CircleHomeo& g, int grid_size = 1 << 16);

/// Integral of min{1, v_g} over [a, b] (a <= b, b - a <= 2pi), honoring exact
/// zero arcs; breakpoint-aware Gauss quadrature elsewhere.
double seam_density_integral(const CircleHomeo& g, double a, double b);

}  // namespace seamlab
