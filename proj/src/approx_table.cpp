#include "carchase/approx_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <stdexcept>

namespace carchase {

namespace {

// Fractional grid coordinate with snapping so that queries issued at
// node coordinates reproduce stored values bit-exactly.
void split_index(double frac, int max_index, int& idx, double& w) {
  idx = static_cast<int>(std::floor(frac));
  w = frac - idx;
  if (w < 1e-9) {
    w = 0;
  } else if (w > 1.0 - 1e-9) {
    idx += 1;
    w = 0;
  }
  if (idx < 0) {
    idx = 0;
    w = 0;
  }
  if (idx >= max_index) {
    idx = max_index;
    w = 0;
  }
}

}  // namespace

ApproxTable ApproxTable::build(const RSConfig& cfg, const TableSpec& spec) {
  if (spec.nx < 2 || spec.ny < 2 || spec.ntheta < 2) {
    throw std::invalid_argument("table resolution must be at least 2 per axis");
  }
  ApproxTable t;
  t.spec_ = spec;
  t.rs_cfg_ = cfg;
  t.dx_ = (spec.x_max - spec.x_min) / (spec.nx - 1);
  t.dy_ = (spec.y_max - spec.y_min) / (spec.ny - 1);
  t.dtheta_ = kTwoPi / spec.ntheta;
  t.values_.resize(static_cast<std::size_t>(spec.nx) * spec.ny * spec.ntheta);
  const Pose origin(0, 0, 0);
  for (int i = 0; i < spec.nx; ++i) {
    for (int j = 0; j < spec.ny; ++j) {
      for (int k = 0; k < spec.ntheta; ++k) {
        Pose to(t.node_x(i), t.node_y(j), t.node_theta(k));
        t.values_[t.flat(i, j, k)] = rs_exact(origin, to, cfg);
      }
    }
  }
  return t;
}

double ApproxTable::interpolate(double dx, double dy, double dtheta) const {
  int i, j, k;
  double wx, wy, wt;
  split_index((dx - spec_.x_min) / dx_, spec_.nx - 1, i, wx);
  split_index((dy - spec_.y_min) / dy_, spec_.ny - 1, j, wy);
  dtheta = normalize_angle(dtheta);
  split_index(dtheta / dtheta_, spec_.ntheta, k, wt);
  if (k >= spec_.ntheta) k -= spec_.ntheta;

  const int i1 = std::min(i + 1, spec_.nx - 1);
  const int j1 = std::min(j + 1, spec_.ny - 1);
  const int k1 = (k + 1) % spec_.ntheta;  // circular in theta

  double acc = 0;
  for (int di = 0; di < 2; ++di) {
    for (int dj = 0; dj < 2; ++dj) {
      for (int dk = 0; dk < 2; ++dk) {
        const double w = (di ? wx : 1 - wx) * (dj ? wy : 1 - wy) *
                         (dk ? wt : 1 - wt);
        if (w == 0) continue;
        acc += w * values_[flat(di ? i1 : i, dj ? j1 : j, dk ? k1 : k)];
      }
    }
  }
  return acc;
}

double ApproxTable::measure_epsilon(int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(spec_.x_min, spec_.x_max);
  std::uniform_real_distribution<double> uy(spec_.y_min, spec_.y_max);
  std::uniform_real_distribution<double> ut(0.0, kTwoPi);
  const Pose origin(0, 0, 0);
  double eps = 0;
  for (int n = 0; n < samples; ++n) {
    const double dx = ux(rng), dy = uy(rng), dth = ut(rng);
    if (std::hypot(dx, dy) < exact_radius()) continue;  // answered exactly
    const double exact = rs_exact(origin, Pose(dx, dy, dth), rs_cfg_);
    if (exact < 1e-9) continue;
    const double approx = interpolate(dx, dy, dth);
    eps = std::max(eps, approx / exact - 1.0);
  }
  // Padded: the sampled maximum underestimates the true maximum, and the
  // stored bound must hold for fresh draws.
  epsilon_ = std::max(0.0, 1.5 * eps);
  return epsilon_;
}

double rs_approx(const Pose& from, const Pose& to, const ApproxTable& table) {
  const double ddx = to.x - from.x, ddy = to.y - from.y;
  const double c = std::cos(from.theta), s = std::sin(from.theta);
  const double dx = c * ddx + s * ddy;
  const double dy = -s * ddx + c * ddy;
  if (!table.covers(dx, dy) || std::hypot(dx, dy) < table.exact_radius()) {
    return rs_exact(from, to, table.rs_config());
  }
  // Interpolation can dip below the true distance near the value
  // surface's ridges; the euclidean distance is a free lower bound and
  // clamping with it cannot add overestimation.
  return std::max(table.interpolate(dx, dy, to.theta - from.theta),
                  std::hypot(ddx, ddy));
}

namespace {
constexpr char kMagic[8] = {'c', 'a', 'r', 'c', 't', 'b', 'l', '1'};
}

void ApproxTable::save(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f.write(kMagic, sizeof(kMagic));
  auto put = [&](const void* p, std::size_t n) {
    f.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
  };
  put(&spec_, sizeof(spec_));
  put(&rs_cfg_, sizeof(rs_cfg_));
  put(&epsilon_, sizeof(epsilon_));
  put(values_.data(), values_.size() * sizeof(double));
}

bool ApproxTable::load(const std::string& path, const RSConfig& cfg,
                       const TableSpec& spec, ApproxTable& out) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return false;
  char magic[8];
  f.read(magic, sizeof(magic));
  if (!f || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) return false;
  TableSpec fspec;
  RSConfig fcfg;
  double eps = 0;
  f.read(reinterpret_cast<char*>(&fspec), sizeof(fspec));
  f.read(reinterpret_cast<char*>(&fcfg), sizeof(fcfg));
  f.read(reinterpret_cast<char*>(&eps), sizeof(eps));
  if (!f) return false;
  // Field-wise comparison: struct padding bytes are indeterminate.
  const bool spec_match =
      fspec.x_min == spec.x_min && fspec.x_max == spec.x_max &&
      fspec.y_min == spec.y_min && fspec.y_max == spec.y_max &&
      fspec.nx == spec.nx && fspec.ny == spec.ny &&
      fspec.ntheta == spec.ntheta;
  const bool cfg_match = fcfg.turning_radius == cfg.turning_radius &&
                         fcfg.reverse_penalty == cfg.reverse_penalty;
  if (!spec_match || !cfg_match) {
    return false;  // config mismatch, caller rebuilds
  }
  out.spec_ = fspec;
  out.rs_cfg_ = fcfg;
  out.epsilon_ = eps;
  out.dx_ = (fspec.x_max - fspec.x_min) / (fspec.nx - 1);
  out.dy_ = (fspec.y_max - fspec.y_min) / (fspec.ny - 1);
  out.dtheta_ = kTwoPi / fspec.ntheta;
  out.values_.resize(static_cast<std::size_t>(fspec.nx) * fspec.ny *
                     fspec.ntheta);
  f.read(reinterpret_cast<char*>(out.values_.data()),
         static_cast<std::streamsize>(out.values_.size() * sizeof(double)));
  return static_cast<bool>(f);
}

}  // namespace carchase
