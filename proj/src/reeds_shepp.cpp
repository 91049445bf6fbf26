#include "carchase/reeds_shepp.hpp"

#include <cmath>

namespace carchase {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kZero = 10.0 * std::numeric_limits<double>::epsilon();

// Wrap into [-pi, pi).
double mod2pi(double x) {
  double v = std::fmod(x, kTwoPi);
  if (v < -kPi) v += kTwoPi;
  if (v >= kPi) v -= kTwoPi;
  return v;
}

void polar(double x, double y, double& r, double& theta) {
  r = std::hypot(x, y);
  theta = std::atan2(y, x);
}

void tau_omega(double u, double v, double xi, double eta, double phi,
               double& tau, double& omega) {
  double delta = mod2pi(u - v);
  double a = std::sin(u) - std::sin(delta);
  double b = std::cos(u) - std::cos(delta) - 1.0;
  double t1 = std::atan2(eta * a - xi * b, xi * a + eta * b);
  double t2 = 2.0 * (std::cos(delta) - std::cos(v) - std::cos(u)) + 3.0;
  tau = (t2 < 0) ? mod2pi(t1 + kPi) : mod2pi(t1);
  omega = mod2pi(tau - u + v - phi);
}

// Formula kernels, unit turning radius, target (x, y, phi) in the start
// frame. Each yields the parameters of one canonical word; all other
// words come from the timeflip / reflect / backwards transforms.

bool LpSpLp(double x, double y, double phi, double& t, double& u, double& v) {
  polar(x - std::sin(phi), y - 1.0 + std::cos(phi), u, t);
  if (t >= -kZero) {
    v = mod2pi(phi - t);
    if (v >= -kZero) return true;
  }
  return false;
}

bool LpSpRp(double x, double y, double phi, double& t, double& u, double& v) {
  double t1, u1;
  polar(x + std::sin(phi), y - 1.0 - std::cos(phi), u1, t1);
  u1 = u1 * u1;
  if (u1 >= 4.0) {
    u = std::sqrt(u1 - 4.0);
    double theta = std::atan2(2.0, u);
    t = mod2pi(t1 + theta);
    v = mod2pi(t - phi);
    return t >= -kZero && v >= -kZero;
  }
  return false;
}

bool LpRmL(double x, double y, double phi, double& t, double& u, double& v) {
  double xi = x - std::sin(phi), eta = y - 1.0 + std::cos(phi);
  double u1, theta;
  polar(xi, eta, u1, theta);
  if (u1 <= 4.0) {
    u = -2.0 * std::asin(0.25 * u1);
    t = mod2pi(theta + 0.5 * u + kPi);
    v = mod2pi(phi - t + u);
    return t >= -kZero && u <= kZero;
  }
  return false;
}

bool LpRupLumRm(double x, double y, double phi, double& t, double& u,
                double& v) {
  double xi = x + std::sin(phi), eta = y - 1.0 - std::cos(phi);
  double rho = 0.25 * (2.0 + std::hypot(xi, eta));
  if (rho <= 1.0) {
    u = std::acos(rho);
    tau_omega(u, -u, xi, eta, phi, t, v);
    return t >= -kZero && v <= kZero;
  }
  return false;
}

bool LpRumLumRp(double x, double y, double phi, double& t, double& u,
                double& v) {
  double xi = x + std::sin(phi), eta = y - 1.0 - std::cos(phi);
  double rho = (20.0 - xi * xi - eta * eta) / 16.0;
  if (rho >= 0.0 && rho <= 1.0) {
    u = -std::acos(rho);
    if (u >= -0.5 * kPi) {
      tau_omega(u, u, xi, eta, phi, t, v);
      return t >= -kZero && v >= -kZero;
    }
  }
  return false;
}

bool LpRmSmLm(double x, double y, double phi, double& t, double& u,
              double& v) {
  double xi = x - std::sin(phi), eta = y - 1.0 + std::cos(phi);
  double rho, theta;
  polar(xi, eta, rho, theta);
  if (rho >= 2.0) {
    double r = std::sqrt(rho * rho - 4.0);
    u = 2.0 - r;
    t = mod2pi(theta + std::atan2(r, -2.0));
    v = mod2pi(phi - 0.5 * kPi - t);
    return t >= -kZero && u <= kZero && v <= kZero;
  }
  return false;
}

bool LpRmSmRm(double x, double y, double phi, double& t, double& u,
              double& v) {
  double xi = x + std::sin(phi), eta = y - 1.0 - std::cos(phi);
  double rho, theta;
  polar(-eta, xi, rho, theta);
  if (rho >= 2.0) {
    t = theta;
    u = 2.0 - rho;
    v = mod2pi(t + 0.5 * kPi - phi);
    return t >= -kZero && u <= kZero && v <= kZero;
  }
  return false;
}

bool LpRmSLmRp(double x, double y, double phi, double& t, double& u,
               double& v) {
  double xi = x + std::sin(phi), eta = y - 1.0 - std::cos(phi);
  double rho, theta;
  polar(xi, eta, rho, theta);
  (void)theta;
  if (rho >= 2.0) {
    u = 4.0 - std::sqrt(rho * rho - 4.0);
    if (u <= kZero) {
      t = mod2pi(
          std::atan2((4.0 - u) * xi - 2.0 * eta, -2.0 * xi + (u - 4.0) * eta));
      v = mod2pi(t - phi);
      return t >= -kZero && v >= -kZero;
    }
  }
  return false;
}

constexpr RSSegType L = RSSegType::Left;
constexpr RSSegType S = RSSegType::Straight;
constexpr RSSegType R = RSSegType::Right;

struct Candidate {
  std::array<RSSegType, 5> types;
  std::array<double, 5> lengths;
  int n;
};

double penalized_cost(const Candidate& c, double reverse_penalty) {
  double cost = 0;
  for (int i = 0; i < c.n; ++i) {
    double l = c.lengths[i];
    cost += (l >= 0) ? l : -l * reverse_penalty;
  }
  return cost;
}

class Best {
 public:
  explicit Best(double reverse_penalty) : penalty_(reverse_penalty) {}

  void offer(std::initializer_list<RSSegType> types,
             std::initializer_list<double> lengths) {
    Candidate c{};
    c.n = static_cast<int>(types.size());
    int i = 0;
    for (auto t : types) c.types[static_cast<std::size_t>(i++)] = t;
    i = 0;
    for (auto l : lengths) c.lengths[static_cast<std::size_t>(i++)] = l;
    double cost = penalized_cost(c, penalty_);
    if (cost < best_cost_) {
      best_cost_ = cost;
      best_ = c;
      valid_ = true;
    }
  }

  RSPath path() const {
    RSPath p;
    if (!valid_) return p;
    p.cost = best_cost_;
    p.length = 0;
    p.num_segments = 0;
    for (int i = 0; i < best_.n; ++i) {
      if (std::abs(best_.lengths[static_cast<std::size_t>(i)]) < kZero)
        continue;
      auto& seg = p.segments[static_cast<std::size_t>(p.num_segments++)];
      seg.type = best_.types[static_cast<std::size_t>(i)];
      seg.length = best_.lengths[static_cast<std::size_t>(i)];
      p.length += std::abs(seg.length);
    }
    return p;
  }

 private:
  double penalty_;
  double best_cost_ = std::numeric_limits<double>::infinity();
  Candidate best_{};
  bool valid_ = false;
};

void collect_csc(double x, double y, double phi, Best& best) {
  double t, u, v;
  if (LpSpLp(x, y, phi, t, u, v)) best.offer({L, S, L}, {t, u, v});
  if (LpSpLp(-x, y, -phi, t, u, v)) best.offer({L, S, L}, {-t, -u, -v});
  if (LpSpLp(x, -y, -phi, t, u, v)) best.offer({R, S, R}, {t, u, v});
  if (LpSpLp(-x, -y, phi, t, u, v)) best.offer({R, S, R}, {-t, -u, -v});
  if (LpSpRp(x, y, phi, t, u, v)) best.offer({L, S, R}, {t, u, v});
  if (LpSpRp(-x, y, -phi, t, u, v)) best.offer({L, S, R}, {-t, -u, -v});
  if (LpSpRp(x, -y, -phi, t, u, v)) best.offer({R, S, L}, {t, u, v});
  if (LpSpRp(-x, -y, phi, t, u, v)) best.offer({R, S, L}, {-t, -u, -v});
}

void collect_ccc(double x, double y, double phi, Best& best) {
  double t, u, v;
  if (LpRmL(x, y, phi, t, u, v)) best.offer({L, R, L}, {t, u, v});
  if (LpRmL(-x, y, -phi, t, u, v)) best.offer({L, R, L}, {-t, -u, -v});
  if (LpRmL(x, -y, -phi, t, u, v)) best.offer({R, L, R}, {t, u, v});
  if (LpRmL(-x, -y, phi, t, u, v)) best.offer({R, L, R}, {-t, -u, -v});
  // Backwards: solve for the reversed word and flip segment order.
  double xb = x * std::cos(phi) + y * std::sin(phi);
  double yb = x * std::sin(phi) - y * std::cos(phi);
  if (LpRmL(xb, yb, phi, t, u, v)) best.offer({L, R, L}, {v, u, t});
  if (LpRmL(-xb, yb, -phi, t, u, v)) best.offer({L, R, L}, {-v, -u, -t});
  if (LpRmL(xb, -yb, -phi, t, u, v)) best.offer({R, L, R}, {v, u, t});
  if (LpRmL(-xb, -yb, phi, t, u, v)) best.offer({R, L, R}, {-v, -u, -t});
}

void collect_cccc(double x, double y, double phi, Best& best) {
  double t, u, v;
  if (LpRupLumRm(x, y, phi, t, u, v)) best.offer({L, R, L, R}, {t, u, -u, v});
  if (LpRupLumRm(-x, y, -phi, t, u, v))
    best.offer({L, R, L, R}, {-t, -u, u, -v});
  if (LpRupLumRm(x, -y, -phi, t, u, v)) best.offer({R, L, R, L}, {t, u, -u, v});
  if (LpRupLumRm(-x, -y, phi, t, u, v))
    best.offer({R, L, R, L}, {-t, -u, u, -v});
  if (LpRumLumRp(x, y, phi, t, u, v)) best.offer({L, R, L, R}, {t, u, u, v});
  if (LpRumLumRp(-x, y, -phi, t, u, v))
    best.offer({L, R, L, R}, {-t, -u, -u, -v});
  if (LpRumLumRp(x, -y, -phi, t, u, v)) best.offer({R, L, R, L}, {t, u, u, v});
  if (LpRumLumRp(-x, -y, phi, t, u, v))
    best.offer({R, L, R, L}, {-t, -u, -u, -v});
}

void collect_ccsc(double x, double y, double phi, Best& best) {
  constexpr double kHalfPi = 0.5 * kPi;
  double t, u, v;
  if (LpRmSmLm(x, y, phi, t, u, v))
    best.offer({L, R, S, L}, {t, -kHalfPi, u, v});
  if (LpRmSmLm(-x, y, -phi, t, u, v))
    best.offer({L, R, S, L}, {-t, kHalfPi, -u, -v});
  if (LpRmSmLm(x, -y, -phi, t, u, v))
    best.offer({R, L, S, R}, {t, -kHalfPi, u, v});
  if (LpRmSmLm(-x, -y, phi, t, u, v))
    best.offer({R, L, S, R}, {-t, kHalfPi, -u, -v});
  if (LpRmSmRm(x, y, phi, t, u, v))
    best.offer({L, R, S, R}, {t, -kHalfPi, u, v});
  if (LpRmSmRm(-x, y, -phi, t, u, v))
    best.offer({L, R, S, R}, {-t, kHalfPi, -u, -v});
  if (LpRmSmRm(x, -y, -phi, t, u, v))
    best.offer({R, L, S, L}, {t, -kHalfPi, u, v});
  if (LpRmSmRm(-x, -y, phi, t, u, v))
    best.offer({R, L, S, L}, {-t, kHalfPi, -u, -v});
  double xb = x * std::cos(phi) + y * std::sin(phi);
  double yb = x * std::sin(phi) - y * std::cos(phi);
  if (LpRmSmLm(xb, yb, phi, t, u, v))
    best.offer({L, S, R, L}, {v, u, -kHalfPi, t});
  if (LpRmSmLm(-xb, yb, -phi, t, u, v))
    best.offer({L, S, R, L}, {-v, -u, kHalfPi, -t});
  if (LpRmSmLm(xb, -yb, -phi, t, u, v))
    best.offer({R, S, L, R}, {v, u, -kHalfPi, t});
  if (LpRmSmLm(-xb, -yb, phi, t, u, v))
    best.offer({R, S, L, R}, {-v, -u, kHalfPi, -t});
  if (LpRmSmRm(xb, yb, phi, t, u, v))
    best.offer({R, S, R, L}, {v, u, -kHalfPi, t});
  if (LpRmSmRm(-xb, yb, -phi, t, u, v))
    best.offer({R, S, R, L}, {-v, -u, kHalfPi, -t});
  if (LpRmSmRm(xb, -yb, -phi, t, u, v))
    best.offer({L, S, L, R}, {v, u, -kHalfPi, t});
  if (LpRmSmRm(-xb, -yb, phi, t, u, v))
    best.offer({L, S, L, R}, {-v, -u, kHalfPi, -t});
}

void collect_ccscc(double x, double y, double phi, Best& best) {
  constexpr double kHalfPi = 0.5 * kPi;
  double t, u, v;
  if (LpRmSLmRp(x, y, phi, t, u, v))
    best.offer({L, R, S, L, R}, {t, -kHalfPi, u, -kHalfPi, v});
  if (LpRmSLmRp(-x, y, -phi, t, u, v))
    best.offer({L, R, S, L, R}, {-t, kHalfPi, -u, kHalfPi, -v});
  if (LpRmSLmRp(x, -y, -phi, t, u, v))
    best.offer({R, L, S, R, L}, {t, -kHalfPi, u, -kHalfPi, v});
  if (LpRmSLmRp(-x, -y, phi, t, u, v))
    best.offer({R, L, S, R, L}, {-t, kHalfPi, -u, kHalfPi, -v});
}

Pose advance(const Pose& p, RSSegType type, double v) {
  Pose out = p;
  switch (type) {
    case RSSegType::Straight:
      out.x += v * std::cos(p.theta);
      out.y += v * std::sin(p.theta);
      break;
    case RSSegType::Left:
      out.x += std::sin(p.theta + v) - std::sin(p.theta);
      out.y += std::cos(p.theta) - std::cos(p.theta + v);
      out.theta = normalize_angle(p.theta + v);
      break;
    case RSSegType::Right:
      out.x += std::sin(p.theta) - std::sin(p.theta - v);
      out.y += std::cos(p.theta - v) - std::cos(p.theta);
      out.theta = normalize_angle(p.theta - v);
      break;
  }
  return out;
}

}  // namespace

RSPath rs_shortest(const Pose& from, const Pose& to, const RSConfig& cfg) {
  const double r = cfg.turning_radius;
  const double dx = to.x - from.x, dy = to.y - from.y;
  const double c = std::cos(from.theta), s = std::sin(from.theta);
  const double x = (c * dx + s * dy) / r;
  const double y = (-s * dx + c * dy) / r;
  const double phi = mod2pi(to.theta - from.theta);

  Best best(cfg.reverse_penalty);
  collect_csc(x, y, phi, best);
  collect_ccc(x, y, phi, best);
  collect_cccc(x, y, phi, best);
  collect_ccsc(x, y, phi, best);
  collect_ccscc(x, y, phi, best);
  return best.path();
}

double rs_exact(const Pose& from, const Pose& to, const RSConfig& cfg) {
  return rs_shortest(from, to, cfg).cost * cfg.turning_radius;
}

std::vector<RSWaypoint> rs_waypoints(const Pose& from, const RSPath& path,
                                     const RSConfig& cfg, double max_step) {
  std::vector<RSWaypoint> out;
  const double r = cfg.turning_radius;
  // Work in normalized units: scale the frame down, advance, scale up.
  Pose cur{from.x / r, from.y / r, from.theta};
  for (int i = 0; i < path.num_segments; ++i) {
    const auto& seg = path.segments[static_cast<std::size_t>(i)];
    const double seg_meters = std::abs(seg.length) * r;
    const int n = std::max(1, static_cast<int>(std::ceil(seg_meters / max_step)));
    const double dv = seg.length / n;
    const double weight = seg.length >= 0 ? 1.0 : cfg.reverse_penalty;
    for (int k = 0; k < n; ++k) {
      cur = advance(cur, seg.type, dv);
      RSWaypoint wp;
      wp.pose = Pose(cur.x * r, cur.y * r, cur.theta);
      wp.cost = std::abs(dv) * r * weight;
      out.push_back(wp);
    }
  }
  return out;
}

}  // namespace carchase
