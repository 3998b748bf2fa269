#include "seamlab/extension.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace seamlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

DiskPoint RadialExtension::apply(const DiskPoint& p) const {
  double r = p.r();
  if (r == 0.0) return {0.0, 0.0};
  double phi = g_.lift(std::atan2(p.v, p.u));
  return {r * std::cos(phi), r * std::sin(phi)};
}

SpherePoint RadialExtension::apply_sphere(const SpherePoint& q) const {
  if (q.z < -1e-12) throw std::domain_error("RadialExtension: point not in the north closure");
  return stereo_inv(apply(stereo(q)));
}

std::optional<double> RadialExtension::distortion(const DiskPoint& p) const {
  if (p.r() == 0.0) {
    if (g_.family() == HomeoFamily::Isometry) return 1.0;
    return std::nullopt;
  }
  auto v = g_.speed(std::atan2(p.v, p.u));
  if (!v) return std::nullopt;
  if (*v == 0.0) return kInf;
  return std::max(*v, 1.0 / *v);
}

double sampled_bilip(const DiskMap& map, int n_samples) {
  if (n_samples < 2) throw std::domain_error("sampled_bilip: n_samples >= 2");
  const double radii[] = {0.15, 0.35, 0.55, 0.75, 0.92, 0.995};
  const double dth[] = {5e-2, 1e-3, 1e-5};
  const double dr[] = {5e-2, 1e-3};
  double fwd = 1.0, inv = 1.0;
  auto score = [&](const DiskPoint& a, const DiskPoint& b) {
    double src = sigma(stereo_inv(a), stereo_inv(b));
    if (src < 1e-14) return;
    double img = sigma(stereo_inv(map(a)), stereo_inv(map(b)));
    if (img > 0.0) fwd = std::max(fwd, img / src);
    if (img > 1e-300)
      inv = std::max(inv, src / img);
    else
      inv = kInf;
  };
  for (int i = 0; i < n_samples; ++i) {
    double th = kTwoPi * i / n_samples;
    for (double r : radii) {
      DiskPoint base{r * std::cos(th), r * std::sin(th)};
      for (double d : dth) {
        DiskPoint q{r * std::cos(th + d), r * std::sin(th + d)};
        score(base, q);
      }
      for (double d : dr) {
        double r2 = std::min(r + d, 0.999999);
        DiskPoint q{r2 * std::cos(th), r2 * std::sin(th)};
        score(base, q);
        DiskPoint qd{r2 * std::cos(th + d), r2 * std::sin(th + d)};
        score(base, qd);
      }
    }
  }
  return std::max(fwd, inv);
}

Gauge exp_gauge(double p) {
  if (!(p > 0.0)) throw std::domain_error("exp_gauge: p > 0");
  return {"exp(" + std::to_string(p) + ")", [p](double t) { return p * (t - 1.0); }};
}

Gauge table_gauge(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) throw std::domain_error("table_gauge: need at least two knots");
  return {"table", [knots = std::move(knots)](double t) {
            if (t <= knots.front().first) return knots.front().second;
            if (t >= knots.back().first) return knots.back().second;
            for (size_t i = 0; i + 1 < knots.size(); ++i)
              if (t <= knots[i + 1].first) {
                double w = (t - knots[i].first) / (knots[i + 1].first - knots[i].first);
                return knots[i].second + w * (knots[i + 1].second - knots[i].second);
              }
            return knots.back().second;
          }};
}

GaugeCheck check_gauge(const Gauge& gauge) {
  GaugeCheck out;
  if (std::abs(gauge.A(1.0)) > 1e-9) {
    out.violation = "A(1) != 0";
    return out;
  }
  // Dyadic samples of A and of t A'(t).
  const int kOctaves = 20;
  std::vector<double> t, a, ta;
  for (int k = 0; k <= 4 * kOctaves; ++k) {
    double x = std::pow(2.0, 0.25 * k);
    t.push_back(x);
    a.push_back(gauge.A(x));
  }
  for (size_t i = 0; i + 1 < t.size(); ++i)
    if (a[i + 1] < a[i] - 1e-12) {
      out.violation = "A not increasing";
      return out;
    }
  for (size_t i = 1; i + 1 < t.size(); ++i) {
    double d = (a[i + 1] - a[i - 1]) / (t[i + 1] - t[i - 1]);
    ta.push_back(t[i] * d);
  }
  // Divergence of int_1^inf t^-2 A(t) dt: octave contributions must not decay
  // to zero (trapezoid estimate per quarter-octave step).
  double first_oct = 0.0, last_oct = 0.0;
  for (size_t i = 0; i + 1 < t.size(); ++i) {
    double seg = 0.5 * (a[i] / (t[i] * t[i]) + a[i + 1] / (t[i + 1] * t[i + 1])) *
                 (t[i + 1] - t[i]);
    if (t[i + 1] <= 2.0) first_oct += seg;
    if (t[i] >= t.back() / 2.0) last_oct += seg;
  }
  if (last_oct < 1e-6 * std::max(first_oct, 1e-12)) {
    out.violation = "int t^-2 A(t) dt converges";
    return out;
  }
  // t A'(t) increasing for large t with an unbounded tail.
  size_t onset = ta.size();
  for (size_t i = ta.size(); i-- > 0;) {
    if (i + 1 < ta.size() && ta[i] > ta[i + 1] + 1e-9 * std::abs(ta[i + 1])) break;
    onset = i;
  }
  if (onset >= ta.size() - 4) {
    out.violation = "t A'(t) not eventually increasing";
    return out;
  }
  if (ta.back() < 10.0 || ta.back() < 3.0 * std::max(ta[onset], 1e-12)) {
    out.violation = "t A'(t) does not grow unboundedly";
    return out;
  }
  out.admissible = true;
  out.t0 = t[onset + 1];
  return out;
}

namespace {

// Distortion samples at midpoints of n angular cells. The radial factor of
// the hemisphere area element integrates to one per unit angle, so the disk
// integral of a theta-only integrand reduces to the circle.
std::vector<double> distortion_samples(const RadialExtension& ext, int n) {
  std::vector<double> k(n);
  const CircleHomeo& g = ext.boundary();
  for (int i = 0; i < n; ++i) {
    double th = kTwoPi * (i + 0.5) / n;
    auto v = g.speed(th);
    if (!v) v = g.speed(th + 1e-12);
    double s = v ? *v : 1.0;
    k[i] = (s == 0.0) ? kInf : std::max(s, 1.0 / s);
  }
  return k;
}

double gauge_integral(const std::vector<double>& ks, const Gauge& gauge) {
  double h = kTwoPi / ks.size();
  double acc = 0.0;
  for (double k : ks) {
    if (std::isinf(k)) return kInf;
    double e = gauge.A(k);
    if (e > 700.0) return kInf;
    acc += std::exp(e) * h;
  }
  return acc;
}

}  // namespace

IntegrabilityReport exp_integrability(const RadialExtension& ext, const Gauge& gauge,
                                      int quadrature_resolution) {
  if (quadrature_resolution < 64)
    throw std::domain_error("exp_integrability: quadrature_resolution >= 64");
  GaugeCheck chk = check_gauge(gauge);
  if (!chk.admissible) throw std::domain_error("exp_integrability: gauge not admissible: " + chk.violation);

  IntegrabilityReport rep;
  for (int res = quadrature_resolution / 8; res <= quadrature_resolution; res *= 2) {
    rep.resolutions.push_back(res);
    rep.values.push_back(gauge_integral(distortion_samples(ext, res), gauge));
  }
  int grow = 0;
  for (size_t i = rep.values.size() - 3; i < rep.values.size(); ++i) {
    double prev = rep.values[i - 1], cur = rep.values[i];
    if (std::isinf(cur) || cur >= 1.5 * prev) ++grow;
  }
  rep.divergent = (grow == 3);
  rep.value = rep.values.back();
  return rep;
}

double exp_threshold(const RadialExtension& ext, int quadrature_resolution, double p_lo,
                     double p_hi) {
  std::vector<std::vector<double>> ladders;
  for (int res = quadrature_resolution / 8; res <= quadrature_resolution; res *= 2)
    ladders.push_back(distortion_samples(ext, res));
  auto divergent = [&](double p) {
    Gauge g = exp_gauge(p);
    int grow = 0;
    double prev = -1.0;
    for (size_t i = 0; i < ladders.size(); ++i) {
      double cur = gauge_integral(ladders[i], g);
      if (i + 3 >= ladders.size()) {
        if (std::isinf(cur) || (prev > 0.0 && cur >= 1.5 * prev)) ++grow;
      }
      prev = cur;
    }
    return grow == 3;
  };
  if (divergent(p_lo)) return p_lo;
  if (!divergent(p_hi)) return p_hi;
  for (int i = 0; i < 48; ++i) {
    double mid = std::sqrt(p_lo * p_hi);
    (divergent(mid) ? p_hi : p_lo) = mid;
  }
  return std::sqrt(p_lo * p_hi);
}

// ---------------------------------------------------------------------------
// Beurling-Ahlfors

namespace {

// Boundary chart between the real line and the circle: x -> angle(x).
double angle_of_x(double x) { return 2.0 * std::atan(x) - kPi; }
double x_of_angle(double phi) { return std::tan(0.5 * (phi + kPi)); }

}  // namespace

BeurlingAhlforsExtension::BeurlingAhlforsExtension(CircleHomeo g, int quad_panels)
    : g_(std::move(g)), panels_(quad_panels) {
  if (quad_panels < 8) throw std::domain_error("BeurlingAhlfors: quad_panels >= 8");
  spin_ = g_.lift(kPi) - kPi;
}

namespace {

struct HalfPlaneData {
  double x = 0.0, y = 0.0;
  double alpha = 0.0, beta = 0.0;
};

// Conjugated boundary homeomorphism of the real line (fixes infinity).
double conjugated_line_homeo(const CircleHomeo& g, double spin, double x) {
  return x_of_angle(g.lift(angle_of_x(x)) - spin);
}

// alpha/beta averages at the half-plane image of p. The substitution
// t = sinh(u) resolves both the t ~ 0 and the far-field scale even when the
// image height is enormous (disk points near the chart's infinity).
HalfPlaneData half_plane_averages(const CircleHomeo& g, double spin, int panels,
                                  const DiskPoint& p) {
  const std::complex<double> I(0.0, 1.0);
  std::complex<double> w(p.u, p.v);
  std::complex<double> z = I * (1.0 + w) / (1.0 - w);  // disk -> upper half-plane
  HalfPlaneData out;
  out.x = z.real();
  out.y = z.imag();
  auto avg = [&](double sgn) {
    double U = std::asinh(out.y);
    double h = U / panels;
    auto f = [&](double u) {
      return conjugated_line_homeo(g, spin, out.x + sgn * std::sinh(u)) * std::cosh(u);
    };
    double acc = 0.0;
    for (int i = 0; i < panels; ++i) {
      double u0 = i * h, u2 = (i + 1) * h, u1 = 0.5 * (u0 + u2);
      acc += (f(u0) + 4.0 * f(u1) + f(u2)) * (h / 6.0);
    }
    return acc / out.y;
  };
  out.alpha = avg(1.0);
  out.beta = avg(-1.0);
  return out;
}

}  // namespace

DiskPoint BeurlingAhlforsExtension::apply(const DiskPoint& p) const {
  double r = p.r();
  if (r > 1.0 + 1e-12) throw std::domain_error("BeurlingAhlfors: point outside the closed disk");
  if (r >= 1.0 - 1e-12) {
    double phi = g_.lift(std::atan2(p.v, p.u));
    return {std::cos(phi), std::sin(phi)};
  }
  HalfPlaneData d = half_plane_averages(g_, spin_, panels_, p);
  // The parameter-2 normalization extends the identity to the identity.
  const std::complex<double> I(0.0, 1.0);
  std::complex<double> Z(0.5 * (d.alpha + d.beta), d.alpha - d.beta);
  std::complex<double> back = (Z - I) / (Z + I);
  double c = std::cos(spin_), s = std::sin(spin_);
  return {c * back.real() - s * back.imag(), s * back.real() + c * back.imag()};
}

double BeurlingAhlforsExtension::distortion(const DiskPoint& p) const {
  if (p.r() >= 1.0 - 1e-12)
    throw std::domain_error("BeurlingAhlfors::distortion: interior points only");
  HalfPlaneData d = half_plane_averages(g_, spin_, panels_, p);
  double gp = conjugated_line_homeo(g_, spin_, d.x + d.y);
  double gm = conjugated_line_homeo(g_, spin_, d.x - d.y);
  double g0 = conjugated_line_homeo(g_, spin_, d.x);
  // The averages differentiate in closed form; only boundary values appear,
  // so the distortion field carries no quadrature-amplified noise. Both
  // Moebius charts and the spin are conformal, so this is the distortion of
  // the disk map as well.
  double ax = (gp - g0) / d.y, bx = (g0 - gm) / d.y;
  double ay = (gp - d.alpha) / d.y, by = (gm - d.beta) / d.y;
  double Ux = 0.5 * (ax + bx), Uy = 0.5 * (ay + by);
  double Vx = ax - bx, Vy = ay - by;
  double e2 = Ux * Ux + Uy * Uy + Vx * Vx + Vy * Vy;
  double det = std::abs(Ux * Vy - Uy * Vx);
  if (det < 1e-300) return kInf;
  double disc = std::max(e2 * e2 - 4.0 * det * det, 0.0);
  double s1sq = 0.5 * (e2 + std::sqrt(disc));
  double s2sq = det * det / s1sq;
  return std::sqrt(s1sq / s2sq);
}

DiskMap BeurlingAhlforsExtension::as_map() const {
  return [*this](const DiskPoint& p) { return apply(p); };
}

double finite_difference_distortion(const DiskMap& map, const DiskPoint& p, double h) {
  DiskPoint pu1{p.u + h, p.v}, pu0{p.u - h, p.v};
  DiskPoint pv1{p.u, p.v + h}, pv0{p.u, p.v - h};
  DiskPoint fu1 = map(pu1), fu0 = map(pu0), fv1 = map(pv1), fv0 = map(pv0);
  double a = (fu1.u - fu0.u) / (2 * h), b = (fv1.u - fv0.u) / (2 * h);
  double c = (fu1.v - fu0.v) / (2 * h), d = (fv1.v - fv0.v) / (2 * h);
  DiskPoint f = map(p);
  double scale = conformal_factor(f) / conformal_factor(p);  // squared length ratio
  double e2 = (a * a + b * b + c * c + d * d) * scale;
  double det = std::abs(a * d - b * c) * scale;
  if (det < 1e-300) return kInf;
  // singular values of the metric differential: s1 s2 = det, s1^2 + s2^2 = e2
  double disc = std::max(e2 * e2 - 4.0 * det * det, 0.0);
  double s1sq = 0.5 * (e2 + std::sqrt(disc));
  double s2sq = det * det / s1sq;
  return std::sqrt(s1sq / s2sq);
}

}  // namespace seamlab
