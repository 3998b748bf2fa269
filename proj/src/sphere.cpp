#include "seamlab/sphere.hpp"

#include <algorithm>
#include <stdexcept>

namespace seamlab {

double wrap_angle(double theta) {
  double w = std::fmod(theta, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

SpherePoint equator_point(double theta) {
  return {std::cos(theta), std::sin(theta), 0.0};
}

double sigma(const SpherePoint& a, const SpherePoint& b) {
  if (std::abs(a.norm() - 1.0) > 1e-9 || std::abs(b.norm() - 1.0) > 1e-9)
    throw std::domain_error("sigma: input is not a unit vector");
  // 2 atan2(|a-b|, |a+b|) is well conditioned at both ends of [0, pi].
  double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  double sx = a.x + b.x, sy = a.y + b.y, sz = a.z + b.z;
  return 2.0 * std::atan2(std::sqrt(dx * dx + dy * dy + dz * dz),
                          std::sqrt(sx * sx + sy * sy + sz * sz));
}

double sigma_equator(double theta1, double theta2) {
  double d = std::abs(wrap_angle(theta1) - wrap_angle(theta2));
  return std::min(d, kTwoPi - d);
}

SpherePoint stereo_inv(const DiskPoint& p) {
  double r2 = p.r2();
  double s = 1.0 / (1.0 + r2);
  return {2.0 * p.u * s, 2.0 * p.v * s, (1.0 - r2) * s};
}

DiskPoint stereo(const SpherePoint& p) {
  if (p.z < -1.0 + 1e-14) throw std::domain_error("stereo: south pole has no chart image");
  double s = 1.0 / (1.0 + p.z);
  return {p.x * s, p.y * s};
}

double conformal_factor(const DiskPoint& p) {
  double t = 1.0 + p.r2();
  return 4.0 / (t * t);
}

double radial_arc_length(double r0, double r1) {
  return 2.0 * std::abs(std::atan(r1) - std::atan(r0));
}

double angular_arc_length(double r, double dtheta) {
  return 2.0 * r / (1.0 + r * r) * std::abs(dtheta);
}

double annulus_sector_area(double r0, double r1, double dtheta) {
  // integral of 4 r / (1+r^2)^2 dr has antiderivative -2/(1+r^2)
  double a = 2.0 / (1.0 + r0 * r0) - 2.0 / (1.0 + r1 * r1);
  return std::abs(dtheta) * std::abs(a);
}

SpherePoint fermi_point(Hemisphere h, double theta, double t) {
  double zsign = (h == Hemisphere::North) ? 1.0 : -1.0;
  return {std::cos(theta) * std::cos(t), std::sin(theta) * std::cos(t), zsign * std::sin(t)};
}

}  // namespace seamlab
