#include <doctest.h>

#include <cstdio>
#include <random>

#include "carchase/approx_table.hpp"
#include "carchase/hybrid.hpp"

using namespace carchase;

namespace {

TableSpec small_spec() {
  TableSpec s;
  s.x_min = -20;
  s.x_max = 20;
  s.y_min = -20;
  s.y_max = 20;
  s.nx = 21;
  s.ny = 21;
  s.ntheta = 18;
  return s;
}

}  // namespace

TEST_CASE("table reproduces exact values at its nodes") {
  RSConfig cfg;
  cfg.turning_radius = 2.0;
  cfg.reverse_penalty = 1.5;
  const auto table = ApproxTable::build(cfg, small_spec());
  const Pose origin(0, 0, 0);
  for (int i = 0; i < table.spec().nx; i += 4) {
    for (int j = 0; j < table.spec().ny; j += 4) {
      for (int k = 0; k < table.spec().ntheta; k += 3) {
        const double exact = rs_exact(
            origin, Pose(table.node_x(i), table.node_y(j), table.node_theta(k)),
            cfg);
        CHECK(table.interpolate(table.node_x(i), table.node_y(j),
                                table.node_theta(k)) == exact);
      }
    }
  }
}

TEST_CASE("measured epsilon bounds fresh samples") {
  RSConfig cfg;
  cfg.turning_radius = 2.0;
  auto table = ApproxTable::build(cfg, small_spec());
  const double eps = table.measure_epsilon(4000, 99);
  CHECK(eps >= 0.0);
  CHECK(eps == table.epsilon());

  // A fresh sample draw stays within the measured bound plus margin.
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(-20, 20);
  std::uniform_real_distribution<double> ut(0.0, kTwoPi);
  const Pose origin(0, 0, 0);
  for (int n = 0; n < 4000; ++n) {
    const Pose to(u(rng), u(rng), ut(rng));
    const double exact = rs_exact(origin, to, cfg);
    if (exact < 1e-9) continue;
    CHECK(rs_approx(origin, to, table) <= (1.0 + eps + 0.01) * exact);
  }
}

TEST_CASE("rs_approx falls back to exact outside the bounds") {
  RSConfig cfg;
  cfg.turning_radius = 2.0;
  const auto table = ApproxTable::build(cfg, small_spec());
  const Pose from(0, 0, 0), to(35, 0, 0);  // outside +-20
  CHECK(rs_approx(from, to, table) == rs_exact(from, to, cfg));
}

TEST_CASE("rs_approx is frame aligned") {
  RSConfig cfg;
  cfg.turning_radius = 2.0;
  const auto table = ApproxTable::build(cfg, small_spec());
  // Query equals the origin-frame interpolation of the relative pose.
  const Pose from(3, 4, 1.0), to(10, 9, 2.2);
  const double c = std::cos(from.theta), s = std::sin(from.theta);
  const double dx = c * (to.x - from.x) + s * (to.y - from.y);
  const double dy = -s * (to.x - from.x) + c * (to.y - from.y);
  CHECK(rs_approx(from, to, table) ==
        doctest::Approx(table.interpolate(dx, dy, to.theta - from.theta))
            .epsilon(1e-12));
}

TEST_CASE("table save/load round trip and header mismatch") {
  RSConfig cfg;
  cfg.turning_radius = 2.0;
  cfg.reverse_penalty = 1.5;
  auto table = ApproxTable::build(cfg, small_spec());
  table.measure_epsilon(500, 1);

  const std::string path = "table_roundtrip.bin";
  table.save(path);

  ApproxTable loaded;
  REQUIRE(ApproxTable::load(path, cfg, small_spec(), loaded));
  CHECK(loaded.epsilon() == table.epsilon());
  CHECK(loaded.node_value(3, 5, 7) == table.node_value(3, 5, 7));
  CHECK(loaded.interpolate(1.3, -2.7, 0.9) == table.interpolate(1.3, -2.7, 0.9));

  RSConfig other = cfg;
  other.turning_radius = 3.0;
  ApproxTable rejected;
  CHECK(!ApproxTable::load(path, other, small_spec(), rejected));
  std::remove(path.c_str());
}

TEST_CASE("hybrid threshold schedule and switch") {
  HybridConfig cfg;
  cfg.tau_init = 20;
  cfg.tau_final = 4;
  cfg.estimated_max_g = 100;
  CHECK(hybrid_threshold(0, cfg) == 20.0);
  CHECK(hybrid_threshold(50, cfg) == 12.0);
  CHECK(hybrid_threshold(100, cfg) == 4.0);
  CHECK(hybrid_threshold(1000, cfg) == 4.0);

  RSConfig rs_cfg;
  rs_cfg.turning_radius = 2.0;
  const auto table = ApproxTable::build(rs_cfg, small_spec());
  // Close to the goal the hybrid answer is the exact one.
  const Pose s(0, 0, 0), g(3, 0, 0);
  CHECK(hybrid_h(s, g, 99.0, cfg, table, rs_cfg) == rs_exact(s, g, rs_cfg));
}
