#include "seamlab/circle_homeo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace seamlab {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Gauss-Legendre 7-point rule on [-1, 1].
constexpr int kGaussN = 7;
constexpr double kGaussX[kGaussN] = {
    -0.9491079123427585, -0.7415311855993945, -0.4058451513773972, 0.0,
    0.4058451513773972,  0.7415311855993945,  0.9491079123427585};
constexpr double kGaussW[kGaussN] = {
    0.1294849661688697, 0.2797053914892766, 0.3818300505051189, 0.4179591836734694,
    0.3818300505051189, 0.2797053914892766, 0.1294849661688697};
}  // namespace

bool CircleArc::contains(double theta) const {
  double d = wrap_angle(theta - start);
  return d < length || length >= kTwoPi - 1e-15;
}

struct CircleHomeo::Impl {
  HomeoFamily family = HomeoFamily::Isometry;
  std::string description;
  std::vector<CircleArc> zeros;
  std::vector<CircleArc> singulars;
  double singular_mass = 0.0;
  std::vector<double> breaks;  // sorted, in [0, 2pi)

  virtual ~Impl() = default;
  // Base lift on [0, 2pi]; the wrapper adds 2pi k.
  virtual double lift_base(double t) const = 0;
  // v_g on (0, 2pi); NaN where undefined, +inf allowed.
  virtual double speed_base(double t) const = 0;
  virtual std::optional<double> inverse_base(double u) const { return std::nullopt; }
};

namespace {

struct IsometryImpl final : CircleHomeo::Impl {
  double offset = 0.0;
  double lift_base(double t) const override { return t + offset; }
  double speed_base(double) const override { return 1.0; }
  std::optional<double> inverse_base(double u) const override { return u - offset; }
};

struct PowerImpl final : CircleHomeo::Impl {
  double alpha = 1.0, beta = 1.0;

  double lift_base(double t) const override {
    if (t <= kPi) return kPi * std::pow(t / kPi, 1.0 / alpha);
    return kTwoPi - kPi * std::pow((kTwoPi - t) / kPi, 1.0 / beta);
  }
  double speed_base(double t) const override {
    if (t == 0.0) {
      if (alpha == 1.0 && beta == 1.0) return 1.0;
      if (alpha == 1.0) return kNaN;  // one-sided blowup only
      return kInf;
    }
    if (t == kPi) return (alpha == beta) ? 1.0 / alpha : kNaN;
    if (t < kPi) return (1.0 / alpha) * std::pow(t / kPi, 1.0 / alpha - 1.0);
    return (1.0 / beta) * std::pow((kTwoPi - t) / kPi, 1.0 / beta - 1.0);
  }
  std::optional<double> inverse_base(double u) const override {
    if (u <= kPi) return kPi * std::pow(u / kPi, alpha);
    return kTwoPi - kPi * std::pow((kTwoPi - u) / kPi, beta);
  }
};

// Piecewise-linear lift through (theta_i, G_i); strictly increasing slopes.
struct PwlImpl : CircleHomeo::Impl {
  std::vector<double> th;   // size n+1, th[0] in [0,2pi), th[n] = th[0] + 2pi
  std::vector<double> val;  // val[n] = val[0] + 2pi
  std::vector<double> slope;

  void finalize() {
    size_t n = th.size() - 1;
    slope.resize(n);
    for (size_t i = 0; i < n; ++i) slope[i] = (val[i + 1] - val[i]) / (th[i + 1] - th[i]);
    breaks.clear();
    for (size_t i = 0; i < n; ++i) breaks.push_back(wrap_angle(th[i]));
    std::sort(breaks.begin(), breaks.end());
  }

  // Segment index for t in [th[0], th[0]+2pi).
  size_t segment(double t) const {
    auto it = std::upper_bound(th.begin(), th.end(), t);
    size_t i = static_cast<size_t>(it - th.begin());
    return (i == 0) ? 0 : std::min(i - 1, th.size() - 2);
  }

  double lift_base(double t) const override {
    double shift = 0.0;
    if (t < th[0]) {
      t += kTwoPi;
      shift = -kTwoPi;
    }
    size_t i = segment(t);
    return val[i] + slope[i] * (t - th[i]) + shift;
  }
  double speed_base(double t) const override {
    double tt = (t < th[0]) ? t + kTwoPi : t;
    size_t i = segment(tt);
    if (std::abs(tt - th[i]) < 1e-14 || std::abs(tt - th[i + 1]) < 1e-14) return kNaN;
    return slope[i];
  }
  std::optional<double> inverse_base(double u) const override {
    double shift = 0.0;
    if (u < val[0]) {
      u += kTwoPi;
      shift = -kTwoPi;
    }
    auto it = std::upper_bound(val.begin(), val.end(), u);
    size_t i = (it == val.begin()) ? 0 : std::min(static_cast<size_t>(it - val.begin()) - 1, val.size() - 2);
    return th[i] + (u - val[i]) / slope[i] + shift;
  }
};

// Fat-Cantor lift: zero-density blocks get a tiny positive slope so the lift
// stays strictly increasing; the speed evaluator still reports exact zeros.
struct CantorImpl final : PwlImpl {
  static constexpr double kBlockSlope = 1e-9;

  double speed_base(double t) const override {
    // Blocks are sorted and disjoint inside [0, 1].
    auto it = std::upper_bound(zeros.begin(), zeros.end(), t,
                               [](double x, const CircleArc& a) { return x < a.start; });
    if (it != zeros.begin()) {
      const CircleArc& a = *(it - 1);
      double d = t - a.start;
      if (d > 1e-14 && d < a.length - 1e-14) return 0.0;
    }
    return PwlImpl::speed_base(t);
  }
};

// Lift is the CDF of a finite-level binary splitting measure, evaluated digit
// by digit; the idealized density is zero everywhere and the whole circle
// carries singular mass.
struct SingularImpl final : CircleHomeo::Impl {
  int levels = 22;
  double bias = 0.05;

  double lift_base(double t) const override {
    double x = t / kTwoPi;  // in [0, 1]
    double f = 0.0, w = 1.0;
    for (int i = 0; i < levels; ++i) {
      x *= 2.0;
      if (x >= 1.0) {
        f += w * bias;
        w *= (1.0 - bias);
        x -= 1.0;
      } else {
        w *= bias;
      }
    }
    return kTwoPi * (f + w * x);
  }
  double speed_base(double) const override { return 0.0; }
  std::optional<double> inverse_base(double u) const override {
    double y = u / kTwoPi;
    double x = 0.0, cell = 1.0;
    for (int i = 0; i < levels; ++i) {
      cell *= 0.5;
      if (y >= bias) {
        y = (y - bias) / (1.0 - bias);
        x += cell;
      } else {
        y /= bias;
      }
    }
    return kTwoPi * (x + y * cell);
  }
};

struct ComposedImpl final : CircleHomeo::Impl {
  std::shared_ptr<const CircleHomeo::Impl> a, b;
  const CircleHomeo* outer_handle = nullptr;  // unused; lift goes through helpers

  std::function<double(double)> lift_a, lift_b;
  std::function<double(double)> speed_a, speed_b;

  double lift_base(double t) const override { return lift_a(lift_b(t)); }
  double speed_base(double t) const override {
    double sb = speed_b(t);
    if (std::isnan(sb)) return kNaN;
    double sa = speed_a(lift_b(t));
    if (std::isnan(sa)) return kNaN;
    return sa * sb;
  }
};

void append_arc_events(const std::vector<CircleArc>& arcs, std::vector<double>* out) {
  for (const CircleArc& a : arcs) {
    out->push_back(wrap_angle(a.start));
    out->push_back(wrap_angle(a.start + a.length));
  }
}

}  // namespace

CircleHomeo::CircleHomeo(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

HomeoFamily CircleHomeo::family() const { return impl_->family; }
const std::string& CircleHomeo::describe() const { return impl_->description; }
const std::vector<CircleArc>& CircleHomeo::zero_arcs() const { return impl_->zeros; }
const std::vector<CircleArc>& CircleHomeo::singular_arcs() const { return impl_->singulars; }
double CircleHomeo::singular_mass() const { return impl_->singular_mass; }
const std::vector<double>& CircleHomeo::breakpoints() const { return impl_->breaks; }

double CircleHomeo::lift(double theta) const {
  double k = std::floor(theta / kTwoPi);
  double t = theta - k * kTwoPi;
  return impl_->lift_base(t) + k * kTwoPi;
}

double CircleHomeo::inverse_lift(double phi) const {
  double g0 = impl_->lift_base(0.0);
  double k = std::floor((phi - g0) / kTwoPi);
  double u = phi - k * kTwoPi;  // in [g0, g0 + 2pi)
  if (auto t = impl_->inverse_base(u)) return *t + k * kTwoPi;
  double lo = 0.0, hi = kTwoPi;
  for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
    double mid = 0.5 * (lo + hi);
    (impl_->lift_base(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi) + k * kTwoPi;
}

SpherePoint CircleHomeo::apply(const SpherePoint& p) const {
  return equator_point(apply_angle(std::atan2(p.y, p.x)));
}

std::optional<double> CircleHomeo::speed(double theta) const {
  double v = impl_->speed_base(wrap_angle(theta));
  if (std::isnan(v)) return std::nullopt;
  return v;
}

CircleHomeo CircleHomeo::identity() { return rotation(0.0); }

CircleHomeo CircleHomeo::rotation(double angle) {
  auto impl = std::make_shared<IsometryImpl>();
  impl->offset = angle;
  impl->family = HomeoFamily::Isometry;
  std::ostringstream os;
  os << "rotation(" << angle << ")";
  impl->description = os.str();
  return CircleHomeo(impl);
}

CircleHomeo CircleHomeo::power(double alpha, double beta) {
  if (!(alpha >= 1.0) || !(beta >= alpha))
    throw std::domain_error("power: requires 1 <= alpha <= beta");
  auto impl = std::make_shared<PowerImpl>();
  impl->alpha = alpha;
  impl->beta = beta;
  impl->family = HomeoFamily::Power;
  std::ostringstream os;
  os << "power(" << alpha << "," << beta << ")";
  impl->description = os.str();
  impl->breaks = {0.0, kPi};
  // v = 1 crossings of each branch
  if (alpha > 1.0) impl->breaks.push_back(kPi * std::pow(alpha, alpha / (1.0 - alpha)));
  if (beta > 1.0) impl->breaks.push_back(kTwoPi - kPi * std::pow(beta, beta / (1.0 - beta)));
  std::sort(impl->breaks.begin(), impl->breaks.end());
  return CircleHomeo(impl);
}

CircleHomeo CircleHomeo::cantor(double fraction, int levels) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw std::domain_error("cantor: fraction in (0,1)");
  if (levels < 1) throw std::domain_error("cantor: levels >= 1");
  levels = std::min(levels, 18);

  // Blocks of E at the requested level; all blocks at one level share a length.
  struct Seg {
    double a, b;
  };
  std::vector<Seg> segs = {{0.0, 1.0}};
  for (int j = 1; j <= levels; ++j) {
    double gap = (1.0 - fraction) * std::pow(2.0, -j) / static_cast<double>(segs.size());
    std::vector<Seg> next;
    next.reserve(segs.size() * 2);
    for (const Seg& s : segs) {
      double len = s.b - s.a;
      double child = 0.5 * (len - gap);
      next.push_back({s.a, s.a + child});
      next.push_back({s.b - child, s.b});
    }
    segs = std::move(next);
  }
  double measure = 0.0;
  for (const Seg& s : segs) measure += s.b - s.a;

  auto impl = std::make_shared<CantorImpl>();
  impl->family = HomeoFamily::Cantor;
  double gap_slope = (1.0 - CantorImpl::kBlockSlope * measure) / (1.0 - measure);

  impl->th.push_back(0.0);
  impl->val.push_back(0.0);
  auto push = [&](double theta_end, double slope) {
    double t0 = impl->th.back(), v0 = impl->val.back();
    impl->th.push_back(theta_end);
    impl->val.push_back(v0 + slope * (theta_end - t0));
  };
  for (const Seg& s : segs) {
    if (s.a > impl->th.back() + 1e-15) push(s.a, gap_slope);
    push(s.b, CantorImpl::kBlockSlope);
    impl->zeros.push_back({s.a, s.b - s.a});
  }
  if (impl->th.back() < 1.0 - 1e-15) push(1.0, gap_slope);
  impl->val.back() = 1.0;  // close the unit arc exactly
  push(kTwoPi, 1.0);
  impl->val.back() = kTwoPi;
  impl->finalize();
  impl->singulars = impl->zeros;  // pinned B0; carries no mass for this family
  impl->singular_mass = 0.0;
  std::ostringstream os;
  os << "cantor(" << fraction << "," << levels << ")";
  impl->description = os.str();
  return CircleHomeo(impl);
}

CircleHomeo CircleHomeo::fully_singular(int levels, double bias) {
  if (levels < 1 || levels > 40) throw std::domain_error("fully_singular: levels in [1,40]");
  if (!(bias > 0.0 && bias < 1.0)) throw std::domain_error("fully_singular: bias in (0,1)");
  auto impl = std::make_shared<SingularImpl>();
  impl->family = HomeoFamily::Singular;
  impl->levels = levels;
  impl->bias = bias;
  impl->breaks = {0.0};  // the density is identically zero; pieces are irrelevant
  impl->zeros = {{0.0, kTwoPi}};
  impl->singulars = {{0.0, kTwoPi}};
  impl->singular_mass = kTwoPi;
  std::ostringstream os;
  os << "singular(levels=" << levels << ",bias=" << bias << ")";
  impl->description = os.str();
  return CircleHomeo(impl);
}

CircleHomeo CircleHomeo::piecewise_linear(std::vector<std::pair<double, double>> bp) {
  if (bp.size() < 2) throw std::domain_error("pwl: need at least two breakpoints");
  for (size_t i = 0; i + 1 < bp.size(); ++i)
    if (!(bp[i + 1].first > bp[i].first) || !(bp[i + 1].second > bp[i].second))
      throw std::domain_error("pwl: breakpoints must be strictly increasing");
  if (std::abs(bp.back().first - bp.front().first - kTwoPi) > 1e-9 ||
      std::abs(bp.back().second - bp.front().second - kTwoPi) > 1e-9)
    throw std::domain_error("pwl: breakpoints must span exactly one period");
  auto impl = std::make_shared<PwlImpl>();
  impl->family = HomeoFamily::Pwl;
  // Re-base so the first breakpoint angle lies in [0, 2pi).
  double shift_t = kTwoPi * std::floor(bp.front().first / kTwoPi);
  for (auto& p : bp) {
    impl->th.push_back(p.first - shift_t);
    impl->val.push_back(p.second - shift_t);
  }
  impl->finalize();
  std::ostringstream os;
  os << "pwl(" << bp.size() << " breakpoints)";
  impl->description = os.str();
  return CircleHomeo(impl);
}

CircleHomeo CircleHomeo::compose(const CircleHomeo& a, const CircleHomeo& b) {
  auto impl = std::make_shared<ComposedImpl>();
  impl->family = HomeoFamily::Composed;
  impl->description = a.describe() + " o " + b.describe();
  CircleHomeo ac = a, bc = b;
  impl->lift_a = [ac](double t) { return ac.lift(t); };
  impl->lift_b = [bc](double t) { return bc.lift(t); };
  impl->speed_a = [ac](double t) {
    auto s = ac.speed(t);
    return s ? *s : kNaN;
  };
  impl->speed_b = [bc](double t) {
    auto s = bc.speed(t);
    return s ? *s : kNaN;
  };
  impl->zeros = b.zero_arcs();
  for (const CircleArc& z : a.zero_arcs()) {
    double s = b.inverse_lift(z.start);
    double e = b.inverse_lift(z.start + z.length);
    impl->zeros.push_back({wrap_angle(s), e - s});
  }
  impl->singulars = b.singular_arcs();
  for (const CircleArc& z : a.singular_arcs()) {
    double s = b.inverse_lift(z.start);
    double e = b.inverse_lift(z.start + z.length);
    impl->singulars.push_back({wrap_angle(s), e - s});
  }
  impl->singular_mass = a.singular_mass() + b.singular_mass();
  impl->breaks = b.breakpoints();
  for (double br : a.breakpoints()) impl->breaks.push_back(wrap_angle(b.inverse_lift(br)));
  std::sort(impl->breaks.begin(), impl->breaks.end());
  return CircleHomeo(impl);
}

std::optional<double> metric_speed(const CircleHomeo& g, double theta) { return g.speed(theta); }

BilipEstimate bilip_constant_directional(const CircleHomeo& g, int n_samples) {
  if (n_samples < 2) throw std::domain_error("bilip_constant: n_samples >= 2");
  BilipEstimate est;
  const double offsets[] = {kPi / 2, kPi / 8, kPi / 32, kPi / 128, 2e-3, 1e-4, 1e-6};
  for (int i = 0; i < n_samples; ++i) {
    double t = kTwoPi * i / n_samples;
    for (double d : offsets) {
      double src = sigma_equator(t, t + d);
      double img = sigma_equator(g.apply_angle(t), g.apply_angle(t + d));
      if (src <= 0.0) continue;
      if (img > 0.0) est.forward = std::max(est.forward, img / src);
      if (img > 1e-300)
        est.inverse = std::max(est.inverse, src / img);
      else
        est.inverse = kInf;
    }
  }
  return est;
}

double bilip_constant(const CircleHomeo& g, int n_samples) {
  return bilip_constant_directional(g, n_samples).combined();
}

namespace {

// Splits [a, b] at every breakpoint and zero-arc endpoint; integrates f over
// the smooth pieces with Gauss-Legendre, scoring zero arcs as exact zeros.
template <typename F>
double piecewise_integral(const CircleHomeo& g, double a, double b, F piece_value) {
  if (b < a) throw std::domain_error("integral: requires a <= b");
  if (b - a > kTwoPi + 1e-12) throw std::domain_error("integral: arc longer than full circle");
  std::vector<double> events;
  events.push_back(a);
  events.push_back(b);
  std::vector<double> base = g.breakpoints();
  append_arc_events(g.zero_arcs(), &base);
  append_arc_events(g.singular_arcs(), &base);
  double k0 = std::floor(a / kTwoPi) - 1.0, k1 = std::floor(b / kTwoPi) + 1.0;
  for (double k = k0; k <= k1; ++k)
    for (double e : base) {
      double x = e + k * kTwoPi;
      if (x > a && x < b) events.push_back(x);
    }
  std::sort(events.begin(), events.end());
  double total = 0.0;
  for (size_t i = 0; i + 1 < events.size(); ++i) {
    double lo = events[i], hi = events[i + 1];
    if (hi - lo < 1e-15) continue;
    total += piece_value(lo, hi);
  }
  return total;
}

bool in_zero_arc(const CircleHomeo& g, double theta) {
  for (const CircleArc& z : g.zero_arcs())
    if (z.contains(wrap_angle(theta))) return true;
  return false;
}

}  // namespace

double seam_density_integral(const CircleHomeo& g, double a, double b) {
  return piecewise_integral(g, a, b, [&](double lo, double hi) {
    double mid = 0.5 * (lo + hi);
    if (in_zero_arc(g, mid)) return 0.0;
    double h = 0.5 * (hi - lo), c = 0.5 * (lo + hi), acc = 0.0;
    for (int k = 0; k < kGaussN; ++k) {
      auto v = g.speed(c + h * kGaussX[k]);
      double integrand = v ? std::min(1.0, *v) : 1.0;
      acc += kGaussW[k] * integrand;
    }
    return acc * h;
  });
}

LebesgueDecomposition decompose(const CircleHomeo& g, int grid_size) {
  LebesgueDecomposition out;
  out.grid_theta.resize(grid_size);
  out.density.resize(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    double t = kTwoPi * (i + 0.5) / grid_size;
    out.grid_theta[i] = t;
    if (in_zero_arc(g, t)) {
      out.density[i] = 0.0;
    } else {
      auto v = g.speed(t);
      out.density[i] = v ? *v : 0.0;
    }
  }
  // AC mass: the lift increment off the zero arcs is exact for every family.
  out.ac_mass = piecewise_integral(g, 0.0, kTwoPi, [&](double lo, double hi) {
    if (in_zero_arc(g, 0.5 * (lo + hi))) return 0.0;
    return g.lift(hi) - g.lift(lo);
  });
  double per_arc = g.singular_arcs().empty() ? 0.0
                                             : g.singular_mass() / g.singular_arcs().size();
  for (const CircleArc& s : g.singular_arcs()) out.singular.push_back({s, per_arc});
  out.singular_mass = g.singular_mass();
  return out;
}

}  // namespace seamlab
