#include "seamlab/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seamlab {

double f_bound(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::domain_error("f_bound: eps in (0,1]");
  return std::asin(eps) / kPi + std::sqrt(1.0 - eps * eps) / (kPi * eps);
}

double L_of_C(double C) {
  if (!(C >= 0.5)) throw std::domain_error("L_of_C: C >= 1/2");
  if (C <= 0.5) return 1.0;
  double lo = 1e-300, hi = 1.0;  // f decreasing: f(hi) = 1/2 <= C <= f(lo)
  for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
    double mid = 0.5 * (lo + hi);
    (f_bound(mid) > C ? lo : hi) = mid;
  }
  return 1.0 / (0.5 * (lo + hi));
}

namespace {

// Largest u >= 0 with ccw (or cw) seam measure from theta0 at most budget.
double seam_reach(const GluedMetric& gm, double theta0, double budget, bool ccw) {
  auto measure = [&](double u) {
    return ccw ? gm.seam_measure_ccw(theta0, theta0 + u)
               : gm.seam_measure_ccw(theta0 - u, theta0);
  };
  if (measure(kTwoPi - 1e-12) <= budget) return kTwoPi - 1e-12;
  double lo = 0.0, hi = kTwoPi - 1e-12;
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    (measure(mid) <= budget ? lo : hi) = mid;
  }
  return lo;
}

struct ColumnRange {
  double lo = 0.0, hi = 0.0;  // angular offsets relative to the base angle
};

// Extent of columns that can intersect the ball: the 1D bound
// lambda(s) = min_w [seam(theta0, w) + |s - w|] is nondecreasing per
// direction, and the glued distance dominates it. Offsets are in the chart
// angle of the hemisphere (north offsets are pulled back through g for the
// seam measure).
ColumnRange column_range(const GluedMetric& gm, double theta0, double r, Hemisphere h) {
  const CircleHomeo& g = gm.homeo();
  ColumnRange out;
  const double step = std::max(r / 256.0, 1e-5);
  double base = (h == Hemisphere::South) ? theta0 : g.lift(theta0);
  for (int dir = 0; dir < 2; ++dir) {
    double sign = (dir == 0) ? 1.0 : -1.0;
    double lambda = 0.0, s = 0.0;
    while (s < kPi && lambda <= 1.02 * r) {
      s += step;
      double a = theta0, b = base + sign * s;
      if (h == Hemisphere::North) b = g.inverse_lift(b);
      double m = (dir == 0) ? gm.seam_measure_ccw(a, b) : gm.seam_measure_ccw(b, a);
      lambda = std::min(lambda + step, m);
    }
    (dir == 0 ? out.hi : out.lo) = sign * s;
  }
  return out;
}

}  // namespace

BallArea ball_area(const GluedMetric& gm, double theta0, double r, int quad_res) {
  if (!(r > 0.0 && r < kPi / 4)) throw std::domain_error("ball_area: r in (0, pi/4)");
  if (quad_res < 16) throw std::domain_error("ball_area: quadrature_resolution >= 16");
  const CircleHomeo& g = gm.homeo();

  // Exit points with seam leg beyond r cannot certify membership.
  double u_hi = seam_reach(gm, theta0, 1.000001 * r, true);
  double u_lo = -seam_reach(gm, theta0, 1.000001 * r, false);
  if (u_hi - u_lo >= kTwoPi - 1e-9) {
    u_hi = kPi;
    u_lo = -kPi;
  }
  const int grid = 160;

  BallArea out;
  for (Hemisphere h : {Hemisphere::South, Hemisphere::North}) {
    double base = (h == Hemisphere::South) ? theta0 : g.lift(theta0);
    ColumnRange cr = column_range(gm, theta0, r, h);
    double span = std::min(cr.hi - cr.lo, kTwoPi);
    if (span <= 0.0) continue;
    double ds = span / quad_res;
    double area = 0.0;
    for (int i = 0; i < quad_res; ++i) {
      double s = cr.lo + (i + 0.5) * ds;
      auto member = [&](double t) {
        SpherePoint p = fermi_point(h, base + s, t);
        double d = gm.seam_point_distance(theta0, h, p, grid, u_lo, u_hi);
        return d <= r;
      };
      if (!member(0.0)) continue;
      double t_hi = std::min(r * 1.0000001, kPi / 2 - 1e-9);
      double lo = 0.0;
      if (member(t_hi)) {
        lo = t_hi;
      } else {
        for (int it = 0; it < 36; ++it) {
          double mid = 0.5 * (lo + t_hi);
          (member(mid) ? lo : t_hi) = mid;
        }
      }
      area += std::sin(lo) * ds;
    }
    (h == Hemisphere::South ? out.south : out.north) = area;
  }
  return out;
}

DensityReport density_sweep(const GluedMetric& gm, double theta0,
                            const std::vector<double>& radii, int quad_res) {
  if (radii.size() < 2) throw std::domain_error("density_sweep: need at least two radii");
  for (size_t i = 0; i + 1 < radii.size(); ++i)
    if (!(radii[i + 1] < radii[i])) throw std::domain_error("density_sweep: radii must decrease");

  DensityReport rep;
  rep.theta0 = theta0;
  rep.radii = radii;
  for (double r : radii) {
    BallArea ba = ball_area(gm, theta0, r, quad_res);
    double pr2 = kPi * r * r;
    rep.south.push_back(ba.south);
    rep.north.push_back(ba.north);
    rep.total.push_back(ba.total());
    rep.ratio_south.push_back(ba.south / pr2);
    rep.ratio_north.push_back(ba.north / pr2);
    rep.ratio.push_back(ba.total() / pr2);
  }
  // Two-point Richardson in r^2 on consecutive ladder pairs,
  // C ~ (R(q r) - q^2 R(r)) / (1 - q^2); the liminf estimate is the minimum
  // of the last three extrapolants.
  auto extrapolate = [&](const std::vector<double>& ratios) {
    std::vector<double> ex;
    for (size_t i = 0; i + 1 < ratios.size(); ++i) {
      double q = radii[i + 1] / radii[i];
      double w = q * q;
      ex.push_back((ratios[i + 1] - w * ratios[i]) / (1.0 - w));
    }
    size_t k = ex.size();
    double m = ex[k - 1];
    for (size_t i = (k >= 3 ? k - 3 : 0); i < k; ++i) m = std::min(m, ex[i]);
    return m;
  };
  rep.C1 = extrapolate(rep.ratio_south);
  rep.C2 = extrapolate(rep.ratio_north);
  rep.C = rep.C1 + rep.C2;
  rep.estimate_only = true;
  return rep;
}

PipelineReport theorem11_pipeline(const GluedMetric& gm, const std::vector<double>& sample_points,
                                  const std::vector<double>& radii, double slack, int quad_res) {
  if (sample_points.empty()) throw std::domain_error("theorem11_pipeline: need sample points");
  PipelineReport rep;
  for (double t : sample_points) {
    rep.per_point.push_back(density_sweep(gm, t, radii, quad_res));
    rep.C_prime = std::max(rep.C_prime, rep.per_point.back().C);
  }
  rep.bound_pi_C = kPi * rep.C_prime;
  double c_shift = std::max(rep.C_prime - 0.5, 0.5);
  rep.bound_improved = c_shift * kPi;
  rep.bound_L = L_of_C(c_shift);
  rep.measured_bilip = bilip_constant(gm.homeo(), 512);
  double m = rep.measured_bilip;
  rep.consistent = m <= rep.bound_pi_C * (1.0 + slack) &&
                   m <= rep.bound_improved * (1.0 + slack) && m <= rep.bound_L * (1.0 + slack);
  return rep;
}

}  // namespace seamlab
