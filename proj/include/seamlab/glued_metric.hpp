#pragma once

#include <memory>
#include <vector>

#include "seamlab/circle_homeo.hpp"
#include "seamlab/sphere.hpp"

namespace seamlab {

/// Point of the glued space Z. Equator points are canonically owned by the
/// south chart, so representations are unique.
struct GluedPoint {
  Hemisphere hemi = Hemisphere::South;
  SpherePoint pos;

  bool on_seam() const { return std::abs(pos.z) < 1e-12; }
  double seam_angle() const { return std::atan2(pos.y, pos.x); }
};

/// The glued sphere: two closed hemispheres with the south boundary point at
/// angle theta identified with the north boundary point at angle G(theta).
///
/// Seam geometry lives in a cumulative table of the density min{1, v_g}
/// (prefix sums at 2^16 uniform nodes plus every analytic breakpoint, linear
/// in between); arcs flagged as zero-density contribute exactly zero.
class GluedMetric {
 public:
  explicit GluedMetric(CircleHomeo g, int table_log2 = 16);

  const CircleHomeo& homeo() const { return g_; }

  /// Total mass of the seam, at most 2*pi.
  double seam_total() const { return total_; }

  /// Seam measure of the ccw arc from angle a to angle b.
  double seam_measure_ccw(double a, double b) const;

  /// Distance along the seam: the smaller of the two arc measures.
  double seam_distance(double t1, double t2) const;

  /// Canonical representation (equator points get the south tag, north
  /// equator angles are pulled back through g).
  GluedPoint point(Hemisphere h, const SpherePoint& p) const;

  GluedPoint south_point(const SpherePoint& p) const { return point(Hemisphere::South, p); }
  GluedPoint north_point(const SpherePoint& p) const { return point(Hemisphere::North, p); }
  GluedPoint seam_point(double theta) const { return point(Hemisphere::South, equator_point(theta)); }

  /// Three-case predistance D; infinity across the two open hemispheres.
  double predistance(const GluedPoint& a, const GluedPoint& b) const;

  /// Glued distance d_Z through the structural formula: the direct distance
  /// or entry/exit seam points w, w' bridged by the seam distance. The
  /// (w, w') search is a grid of seam_samples per coordinate refined by
  /// golden section. Requires seam_samples >= 16.
  double glued_distance(const GluedPoint& a, const GluedPoint& b, int seam_samples = 256) const;

  /// Distance from the seam point at south angle theta0 to a point of the
  /// closed hemisphere h; the structural formula reduces to a search over a
  /// single exit point. u_lo/u_hi restrict the exit window (radians relative
  /// to theta0) when the caller knows a budget.
  double seam_point_distance(double theta0, Hemisphere h, const SpherePoint& p,
                             int grid = 512, double u_lo = -kPi, double u_hi = kPi) const;

  /// Maximal arcs of the seam with zero cumulative measure (the quotient
  /// fibers with more than one point). Returns the whole seam as one arc when
  /// the total collapses.
  std::vector<CircleArc> quotient_classes(int resolution = 1 << 16) const;

 private:
  double prefix(double theta) const;  // cumulative measure on [0, 2pi]

  CircleHomeo g_;
  std::vector<double> node_t_;
  std::vector<double> node_f_;
  std::vector<int> bucket_;  // uniform bucket -> first node index
  double total_ = 0.0;
};

/// Brute-force chain graph: polar lattices over both hemispheres with the
/// equator rings identified pairwise (south theta_j with north G(theta_j)),
/// 8-neighbor interior connectivity, seam edges weighted by the predistance
/// of their endpoints, and exact one-hop legs from query points to the seam.
/// Shortest paths over this graph are genuine finite chains, so the value is
/// an upper bound of d_Z converging at the seam sampling rate.
class ChainOracle {
 public:
  ChainOracle(const GluedMetric& gm, int resolution);

  double distance(const GluedPoint& a, const GluedPoint& b) const;

  int node_count() const { return static_cast<int>(pts_.size()); }

 private:
  const GluedMetric& gm_;
  int rings_, sectors_;
  std::vector<SpherePoint> pts_;
  std::vector<Hemisphere> hemi_;
  std::vector<std::vector<std::pair<int, float>>> adj_;
  std::vector<int> seam_nodes_;
};

/// One-shot oracle query; builds the graph at the given resolution. Node
/// count grows as 8 * resolution^2 and is capped at 4e6 (resource error).
double chain_oracle(const GluedMetric& gm, const GluedPoint& a, const GluedPoint& b,
                    int resolution);

}  // namespace seamlab
