#include "seamlab/glued_metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace seamlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr int kGaussN = 7;
constexpr double kGaussX[kGaussN] = {
    -0.9491079123427585, -0.7415311855993945, -0.4058451513773972, 0.0,
    0.4058451513773972,  0.7415311855993945,  0.9491079123427585};
constexpr double kGaussW[kGaussN] = {
    0.1294849661688697, 0.2797053914892766, 0.3818300505051189, 0.4179591836734694,
    0.3818300505051189, 0.2797053914892766, 0.1294849661688697};

// Distance from p to the equator point at angle w; the atan2 form keeps full
// precision for nearly coincident points.
double sigma_to_equator(const SpherePoint& p, double w) {
  double cw = std::cos(w), sw = std::sin(w);
  double dx = p.x - cw, dy = p.y - sw;
  double sx = p.x + cw, sy = p.y + sw;
  return 2.0 * std::atan2(std::sqrt(dx * dx + dy * dy + p.z * p.z),
                          std::sqrt(sx * sx + sy * sy + p.z * p.z));
}

struct MinResult {
  double value;
  double arg;
};

template <typename F>
MinResult golden_min(F f, double lo, double hi, int iters = 60) {
  const double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters && b - a > 1e-12; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return (f1 < f2) ? MinResult{f1, x1} : MinResult{f2, x2};
}

bool point_less(const GluedPoint& a, const GluedPoint& b) {
  auto key = [](const GluedPoint& p) {
    return std::array<double, 4>{p.hemi == Hemisphere::South ? 0.0 : 1.0, p.pos.x, p.pos.y,
                                 p.pos.z};
  };
  return key(a) < key(b);
}

}  // namespace

GluedMetric::GluedMetric(CircleHomeo g, int table_log2) : g_(std::move(g)) {
  if (table_log2 < 8 || table_log2 > 22) throw std::domain_error("GluedMetric: table_log2 in [8,22]");
  const int n = 1 << table_log2;

  // Cut points: uniform grid plus every analytic event of min{1, v_g}.
  std::vector<double> cuts;
  cuts.reserve(n + 4 * g_.zero_arcs().size() + g_.breakpoints().size() + 2);
  for (int i = 0; i <= n; ++i) cuts.push_back(kTwoPi * i / n);
  auto add_event = [&](double t) {
    double w = wrap_angle(t);
    cuts.push_back(w);
    if (w < 1e-12) cuts.push_back(kTwoPi);
  };
  for (double b : g_.breakpoints()) add_event(b);
  for (const CircleArc& a : g_.zero_arcs()) {
    add_event(a.start);
    add_event(a.start + a.length);
  }
  for (const CircleArc& a : g_.singular_arcs()) {
    add_event(a.start);
    add_event(a.start + a.length);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return b - a < 1e-13; }),
             cuts.end());
  if (cuts.back() < kTwoPi - 1e-13) cuts.push_back(kTwoPi);

  // Sorted zero cover for fast membership.
  std::vector<CircleArc> zeros = g_.zero_arcs();
  std::sort(zeros.begin(), zeros.end(),
            [](const CircleArc& a, const CircleArc& b) { return a.start < b.start; });
  auto in_zero = [&](double t) {
    auto it = std::upper_bound(zeros.begin(), zeros.end(), t,
                               [](double x, const CircleArc& a) { return x < a.start; });
    if (it != zeros.begin() && (it - 1)->contains(t)) return true;
    // wrap-around arc
    if (!zeros.empty() && zeros.back().start + zeros.back().length > kTwoPi &&
        zeros.back().contains(t))
      return true;
    return false;
  };

  node_t_.resize(cuts.size());
  node_f_.resize(cuts.size());
  node_t_[0] = 0.0;
  node_f_[0] = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    double lo = cuts[i], hi = cuts[i + 1];
    double mass = 0.0;
    if (!in_zero(0.5 * (lo + hi))) {
      double h = 0.5 * (hi - lo), c = 0.5 * (lo + hi);
      for (int k = 0; k < kGaussN; ++k) {
        auto v = g_.speed(c + h * kGaussX[k]);
        mass += kGaussW[k] * (v ? std::min(1.0, *v) : 1.0);
      }
      mass *= h;
    }
    node_t_[i + 1] = hi;
    node_f_[i + 1] = node_f_[i] + mass;
  }
  total_ = node_f_.back();

  // Uniform buckets over the (non-uniform) node list.
  bucket_.assign(n + 1, 0);
  size_t j = 0;
  for (int b = 0; b <= n; ++b) {
    double t = kTwoPi * b / n;
    while (j + 1 < node_t_.size() && node_t_[j + 1] <= t) ++j;
    bucket_[b] = static_cast<int>(j);
  }
}

double GluedMetric::prefix(double theta) const {
  if (theta <= 0.0) return 0.0;
  if (theta >= kTwoPi) return total_;
  int n = static_cast<int>(bucket_.size()) - 1;
  int b = std::min(n - 1, static_cast<int>(theta / kTwoPi * n));
  size_t i = bucket_[b];
  while (i + 1 < node_t_.size() && node_t_[i + 1] <= theta) ++i;
  double t0 = node_t_[i], t1 = node_t_[i + 1];
  double w = (t1 > t0) ? (theta - t0) / (t1 - t0) : 0.0;
  return node_f_[i] + w * (node_f_[i + 1] - node_f_[i]);
}

double GluedMetric::seam_measure_ccw(double a, double b) const {
  double A = wrap_angle(a), B = wrap_angle(b);
  if (B >= A) return prefix(B) - prefix(A);
  return total_ - (prefix(A) - prefix(B));
}

double GluedMetric::seam_distance(double t1, double t2) const {
  double m = seam_measure_ccw(t1, t2);
  return std::min(m, total_ - m);
}

GluedPoint GluedMetric::point(Hemisphere h, const SpherePoint& p) const {
  double nrm = p.norm();
  if (std::abs(nrm - 1.0) > 1e-9) throw std::domain_error("GluedMetric::point: not a unit vector");
  SpherePoint q{p.x / nrm, p.y / nrm, p.z / nrm};
  if (std::abs(q.z) < 1e-12) {
    double ang = std::atan2(q.y, q.x);
    if (h == Hemisphere::North) ang = g_.inverse_lift(ang);
    return {Hemisphere::South, equator_point(ang)};
  }
  if (h == Hemisphere::South && q.z > 0.0)
    throw std::domain_error("GluedMetric::point: position outside the south hemisphere");
  if (h == Hemisphere::North && q.z < 0.0)
    throw std::domain_error("GluedMetric::point: position outside the north hemisphere");
  return {h, q};
}

double GluedMetric::predistance(const GluedPoint& a, const GluedPoint& b) const {
  const bool as = a.on_seam(), bs = b.on_seam();
  if (as && bs) {
    double ta = a.seam_angle(), tb = b.seam_angle();
    return std::min(sigma_equator(ta, tb),
                    sigma_equator(g_.lift(ta), g_.lift(tb)));
  }
  if (as || bs) {
    const GluedPoint& s = as ? a : b;
    const GluedPoint& o = as ? b : a;
    if (o.hemi == Hemisphere::South) return sigma(s.pos, o.pos);
    return sigma_to_equator(o.pos, g_.lift(s.seam_angle()));
  }
  if (a.hemi != b.hemi) return kInf;
  return sigma(a.pos, b.pos);
}

double GluedMetric::seam_point_distance(double theta0, Hemisphere h, const SpherePoint& p,
                                        int grid, double u_lo, double u_hi) const {
  if (grid < 8) throw std::domain_error("seam_point_distance: grid >= 8");
  auto leg = [&](double u) {
    double w = theta0 + u;
    return (h == Hemisphere::South) ? sigma_to_equator(p, w)
                                    : sigma_to_equator(p, g_.lift(w));
  };
  auto objective = [&](double u) { return seam_distance(theta0, theta0 + u) + leg(u); };

  double best = objective(0.0);
  double best_u = 0.0;
  // The foot of p is always a candidate exit.
  double foot = std::atan2(p.y, p.x);
  if (h == Hemisphere::North) foot = g_.inverse_lift(foot);
  double uf = std::remainder(foot - theta0, kTwoPi);
  if (uf >= u_lo && uf <= u_hi) {
    double v = objective(uf);
    if (v < best) {
      best = v;
      best_u = uf;
    }
  }
  double du = (u_hi - u_lo) / grid;
  for (int i = 0; i <= grid; ++i) {
    double u = u_lo + du * i;
    double v = objective(u);
    if (v < best) {
      best = v;
      best_u = u;
    }
  }
  best = std::min(best, golden_min(objective, best_u - du, best_u + du).value);
  return best;
}

double GluedMetric::glued_distance(const GluedPoint& a0, const GluedPoint& b0,
                                   int seam_samples) const {
  if (seam_samples < 16) throw std::domain_error("glued_distance: seam_samples >= 16");
  GluedPoint a = a0, b = b0;
  if (point_less(b, a)) std::swap(a, b);  // symmetric by construction

  if (a.on_seam())
    return seam_point_distance(a.seam_angle(), b.on_seam() ? Hemisphere::South : b.hemi, b.pos,
                               seam_samples);
  if (b.on_seam())
    return seam_point_distance(b.seam_angle(), a.hemi, a.pos, seam_samples);

  auto leg = [&](const GluedPoint& p, double w) {
    return (p.hemi == Hemisphere::South) ? sigma_to_equator(p.pos, w)
                                         : sigma_to_equator(p.pos, g_.lift(w));
  };

  double best = (a.hemi == b.hemi) ? sigma(a.pos, b.pos) : kInf;

  const int n = seam_samples;
  std::vector<double> la(n), lb(n), pf(n);
  for (int i = 0; i < n; ++i) {
    double w = kTwoPi * i / n;
    la[i] = leg(a, w);
    lb[i] = leg(b, w);
    pf[i] = prefix(w);
  }
  const double cell = kTwoPi / n;
  // Exit-point optimum for a fixed entry point w: a grid scan over the
  // cached legs plus golden refinement, exactly the seam-anchored search.
  auto inner_min = [&](double w) {
    double fw = prefix(wrap_angle(w));
    auto seam_from_w = [&](double pfj) {
      double m = pfj - fw;
      if (m < 0.0) m += total_;
      return std::min(m, total_ - m);
    };
    double bestv = leg(b, w);  // exit where we entered
    int bj = -1;
    for (int j = 0; j < n; ++j) {
      double v = seam_from_w(pf[j]) + lb[j];
      if (v < bestv) {
        bestv = v;
        bj = j;
      }
    }
    auto obj = [&](double wp) { return seam_distance(w, wp) + leg(b, wp); };
    if (bj >= 0) {
      double wj = kTwoPi * bj / n;
      bestv = std::min(bestv, golden_min(obj, wj - cell, wj + cell).value);
    } else {
      bestv = std::min(bestv, golden_min(obj, w - cell, w + cell).value);
    }
    return bestv;
  };

  double bgrid = kInf;
  int bi = 0;
  for (int i = 0; i < n; ++i) {
    double v = la[i] + inner_min(kTwoPi * i / n);
    if (v < bgrid) {
      bgrid = v;
      bi = i;
    }
  }
  double wi = kTwoPi * bi / n;
  auto outer = [&](double w) { return leg(a, w) + inner_min(w); };
  double refined = std::min(bgrid, golden_min(outer, wi - cell, wi + cell).value);
  return std::min(best, refined);
}

std::vector<CircleArc> GluedMetric::quotient_classes(int resolution) const {
  if (resolution < 8) throw std::domain_error("quotient_classes: resolution >= 8");
  std::vector<CircleArc> out;
  if (total_ <= 1e-9 * kTwoPi) {
    out.push_back({0.0, kTwoPi});
    return out;
  }
  double run_start = 0.0;
  bool in_run = false;
  for (size_t i = 0; i + 1 < node_t_.size(); ++i) {
    double dt = node_t_[i + 1] - node_t_[i];
    double df = node_f_[i + 1] - node_f_[i];
    bool flat = (df <= 1e-9 * std::max(dt, 1e-30));
    if (flat && !in_run) {
      run_start = node_t_[i];
      in_run = true;
    } else if (!flat && in_run) {
      double len = node_t_[i] - run_start;
      if (len > 1e-10) out.push_back({run_start, len});
      in_run = false;
    }
  }
  if (in_run) {
    double len = kTwoPi - run_start;
    if (!out.empty() && out.front().start < 1e-12) {
      out.front().start = wrap_angle(run_start);
      out.front().length += len;
    } else if (len > 1e-10) {
      out.push_back({run_start, len});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chain oracle

ChainOracle::ChainOracle(const GluedMetric& gm, int resolution) : gm_(gm) {
  if (resolution < 4) throw std::domain_error("ChainOracle: resolution >= 4");
  rings_ = resolution;
  sectors_ = 4 * resolution;
  long long nodes = static_cast<long long>(sectors_) +
                    2ll * ((static_cast<long long>(rings_) - 1) * sectors_ + 1);
  if (nodes > 4000000ll)
    throw std::runtime_error("ChainOracle: resolution exceeds the resource bound (4e6 nodes)");

  const CircleHomeo& g = gm_.homeo();
  pts_.resize(nodes);
  hemi_.resize(nodes);
  adj_.resize(nodes);
  seam_nodes_.resize(sectors_);

  auto theta_of = [&](int j) { return kTwoPi * j / sectors_; };
  for (int j = 0; j < sectors_; ++j) {
    pts_[j] = equator_point(theta_of(j));
    hemi_[j] = Hemisphere::South;
    seam_nodes_[j] = j;
  }
  const int south_base = sectors_;
  const int south_pole = south_base + (rings_ - 1) * sectors_;
  const int north_base = south_pole + 1;
  const int north_pole = north_base + (rings_ - 1) * sectors_;
  for (int i = 1; i < rings_; ++i) {
    double t = (kPi / 2) * i / rings_;
    for (int j = 0; j < sectors_; ++j) {
      pts_[south_base + (i - 1) * sectors_ + j] = fermi_point(Hemisphere::South, theta_of(j), t);
      hemi_[south_base + (i - 1) * sectors_ + j] = Hemisphere::South;
      pts_[north_base + (i - 1) * sectors_ + j] =
          fermi_point(Hemisphere::North, g.lift(theta_of(j)), t);
      hemi_[north_base + (i - 1) * sectors_ + j] = Hemisphere::North;
    }
  }
  pts_[south_pole] = {0.0, 0.0, -1.0};
  hemi_[south_pole] = Hemisphere::South;
  pts_[north_pole] = {0.0, 0.0, 1.0};
  hemi_[north_pole] = Hemisphere::North;

  auto id_of = [&](Hemisphere h, int ring, int j) -> int {
    j = ((j % sectors_) + sectors_) % sectors_;
    if (ring == 0) return j;
    if (ring == rings_) return (h == Hemisphere::South) ? south_pole : north_pole;
    int base = (h == Hemisphere::South) ? south_base : north_base;
    return base + (ring - 1) * sectors_ + j;
  };

  // Seam ring: predistance weights (the D of adjacent identified points).
  for (int j = 0; j < sectors_; ++j) {
    double t0 = theta_of(j), t1 = theta_of(j + 1);
    double w = std::min(sigma_equator(t0, t1), sigma_equator(g.lift(t0), g.lift(t1)));
    int u = id_of(Hemisphere::South, 0, j), v = id_of(Hemisphere::South, 0, j + 1);
    adj_[u].push_back({v, static_cast<float>(w)});
    adj_[v].push_back({u, static_cast<float>(w)});
  }
  // Interior 8-neighbor lattice per hemisphere.
  for (Hemisphere h : {Hemisphere::South, Hemisphere::North}) {
    for (int i = 0; i <= rings_ - 1; ++i) {
      for (int j = 0; j < sectors_; ++j) {
        int u = id_of(h, i, j);
        auto connect = [&](int ring, int sec) {
          int v = id_of(h, ring, sec);
          if (v == u) return;
          double w = sigma(pts_[u], pts_[v]);
          adj_[u].push_back({v, static_cast<float>(w)});
          adj_[v].push_back({u, static_cast<float>(w)});
        };
        if (i > 0) connect(i, j + 1);  // ring edges off the seam
        if (i + 1 == rings_) {
          connect(i + 1, j);  // single edge into the pole
        } else {
          connect(i + 1, j);
          connect(i + 1, j + 1);
          connect(i + 1, j - 1);
        }
      }
    }
  }
}

double ChainOracle::distance(const GluedPoint& a, const GluedPoint& b) const {
  const CircleHomeo& g = gm_.homeo();
  const int n = node_count();
  std::vector<double> dist(n, kInf);
  std::vector<double> to_b(n, kInf);

  // Seam points are canonically south, so the leg lives in the south chart.
  auto equator_leg = [&](const GluedPoint& p, int j) {
    double w = kTwoPi * j / sectors_;
    return (p.hemi == Hemisphere::South) ? sigma_to_equator(p.pos, w)
                                         : sigma_to_equator(p.pos, g.lift(w));
  };

  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  for (int j = 0; j < sectors_; ++j) {
    double w = equator_leg(a, j);
    if (w < dist[seam_nodes_[j]]) {
      dist[seam_nodes_[j]] = w;
      pq.push({w, seam_nodes_[j]});
    }
    to_b[seam_nodes_[j]] = std::min(to_b[seam_nodes_[j]], equator_leg(b, j));
  }
  double best = kInf;
  if (a.hemi == b.hemi || a.on_seam() || b.on_seam()) {
    double direct = gm_.predistance(a, b);
    best = std::min(best, direct);
  }
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u] + 1e-15) continue;
    if (d + 0.0 >= best) break;
    best = std::min(best, d + to_b[u]);
    for (auto [v, w] : adj_[u]) {
      double nd = d + w;
      if (nd < dist[v]) {
        dist[v] = nd;
        pq.push({nd, v});
      }
    }
  }
  return best;
}

double chain_oracle(const GluedMetric& gm, const GluedPoint& a, const GluedPoint& b,
                    int resolution) {
  ChainOracle oracle(gm, resolution);
  return oracle.distance(a, b);
}

}  // namespace seamlab
