#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "carchase/reeds_shepp.hpp"

namespace carchase {

struct TableSpec {
  double x_min = -50, x_max = 50;
  double y_min = -50, y_max = 50;
  int nx = 256, ny = 256, ntheta = 128;  // all >= 2; theta wraps circularly
};

// Dense grid of exact Reeds-Shepp distances over relative goal
// configurations (dx, dy, dtheta) in the start-aligned frame, queried
// with trilinear interpolation (circular in dtheta).
class ApproxTable {
 public:
  ApproxTable() = default;

  static ApproxTable build(const RSConfig& cfg, const TableSpec& spec);

  // Max relative overestimation measured on `samples` uniform random
  // relative configurations; stores and returns the result.
  double measure_epsilon(int samples, std::uint64_t seed);

  // Interpolated distance for a relative configuration. Callers must
  // keep (dx, dy) inside the bounds; rs_approx below handles fallback.
  double interpolate(double dx, double dy, double dtheta) const;

  bool covers(double dx, double dy) const {
    return dx >= spec_.x_min && dx <= spec_.x_max && dy >= spec_.y_min &&
           dy <= spec_.y_max;
  }

  // Inside this radius the value surface is too jagged to interpolate
  // (exact distance can be far below the node spacing scale), so
  // rs_approx answers exactly there and epsilon only measures the
  // interpolated region.
  double exact_radius() const { return 2.0 * rs_cfg_.turning_radius; }

  double node_value(int i, int j, int k) const {
    return values_[flat(i, j, k)];
  }
  double node_x(int i) const { return spec_.x_min + i * dx_; }
  double node_y(int j) const { return spec_.y_min + j * dy_; }
  double node_theta(int k) const { return k * dtheta_; }

  const TableSpec& spec() const { return spec_; }
  const RSConfig& rs_config() const { return rs_cfg_; }
  double epsilon() const { return epsilon_; }
  bool empty() const { return values_.empty(); }

  void save(const std::string& path) const;
  // Returns false when the file is missing or its header does not match
  // the requested config; caller rebuilds in that case.
  static bool load(const std::string& path, const RSConfig& cfg,
                   const TableSpec& spec, ApproxTable& out);

 private:
  std::size_t flat(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * spec_.ny +
            static_cast<std::size_t>(j)) *
               spec_.ntheta +
           static_cast<std::size_t>(k);
  }

  TableSpec spec_;
  RSConfig rs_cfg_;
  double dx_ = 0, dy_ = 0, dtheta_ = 0;
  double epsilon_ = 0;
  std::vector<double> values_;
};

// Table lookup in the from-aligned frame; falls back to rs_exact when
// the relative position is outside the table bounds.
double rs_approx(const Pose& from, const Pose& to, const ApproxTable& table);

}  // namespace carchase
