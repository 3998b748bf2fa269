#pragma once

#include <array>
#include <cmath>

namespace seamlab {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Point on the unit sphere S^2, stored as a unit 3-vector.
struct SpherePoint {
  double x = 0.0, y = 0.0, z = 1.0;

  double dot(const SpherePoint& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

/// Stereographic plane coordinate. The closed unit disk corresponds to the
/// closed northern hemisphere; the origin is the north pole.
struct DiskPoint {
  double u = 0.0, v = 0.0;

  double r2() const { return u * u + v * v; }
  double r() const { return std::sqrt(r2()); }
  double angle() const { return std::atan2(v, u); }
};

/// Normalizes an angle to [0, 2*pi).
double wrap_angle(double theta);

/// Point on the equator circle at the given angle.
SpherePoint equator_point(double theta);

/// Length (great-circle) distance on S^2, in radians. Throws std::domain_error
/// if either argument is not a unit vector within 1e-9.
double sigma(const SpherePoint& a, const SpherePoint& b);

/// Great-circle distance between two equator points given by angle.
double sigma_equator(double theta1, double theta2);

/// Inverse stereographic projection: disk chart -> sphere. Total map; the unit
/// circle goes to the equator and the origin to the north pole (0,0,1).
SpherePoint stereo_inv(const DiskPoint& p);

/// Stereographic projection from the south pole. Throws std::domain_error at
/// the south pole itself.
DiskPoint stereo(const SpherePoint& p);

/// Conformal factor of the round metric on the stereographic chart,
/// 4 / (1 + r^2)^2. Lengths scale by its square root.
double conformal_factor(const DiskPoint& p);

/// Arc length of the chart segment [r0, r1] along a ray, in the round metric.
double radial_arc_length(double r0, double r1);

/// Arc length of the chart circular arc of angular width dtheta at radius r.
double angular_arc_length(double r, double dtheta);

/// Spherical area of the chart region [r0,r1] x [dtheta sector].
double annulus_sector_area(double r0, double r1, double dtheta);

enum class Hemisphere { South, North };

/// Point at equator angle `theta` moved distance `t` along the meridian into
/// the given hemisphere (Fermi coordinates around the equator). Exact on the
/// round sphere; the area element of (s, t) is cos(t) dt ds.
SpherePoint fermi_point(Hemisphere h, double theta, double t);

}  // namespace seamlab
