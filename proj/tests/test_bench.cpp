#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "carchase/bench.hpp"
#include "carchase/instance.hpp"

using namespace carchase;
namespace fs = std::filesystem;

TEST_CASE("named configuration bundles") {
  REQUIRE(named_config("baseline"));
  CHECK(named_config("baseline")->cache_mode == CacheMode::Off);
  CHECK(named_config("baseline")->heuristic_mode == HeuristicMode::Exact);
  REQUIRE(named_config("carchase"));
  CHECK(named_config("carchase")->cache_mode == CacheMode::ConflictAware);
  CHECK(named_config("carchase")->heuristic_mode == HeuristicMode::Hybrid);
  REQUIRE(named_config("stateonly"));
  CHECK(named_config("stateonly")->cache_mode == CacheMode::StateOnly);
  CHECK(!named_config("nonsense"));
}

TEST_CASE("csv row round trip") {
  RunRecord r;
  r.instance = "m25_a4_d0_s1_i003.yaml";
  r.config = "carchase";
  r.solved = true;
  r.wall_time_s = 1.25;
  r.cost = 87.375;
  r.expansions = 1234;
  r.cache_lookups = 500;
  r.cache_hits = 300;
  r.cache_entries = 200;
  r.cache_bytes = 18400;
  r.evictions = 0;

  const std::string path = "bench_roundtrip.csv";
  {
    std::ofstream out(path);
    out << kCsvHeader << "\n" << to_csv_row(r) << "\n";
  }
  const auto back = load_csv(path);
  fs::remove(path);
  REQUIRE(back.size() == 1);
  CHECK(back[0].instance == r.instance);
  CHECK(back[0].config == r.config);
  CHECK(back[0].solved == r.solved);
  CHECK(back[0].wall_time_s == r.wall_time_s);
  CHECK(back[0].cost == r.cost);
  CHECK(back[0].cache_bytes == r.cache_bytes);
}

namespace {

RunRecord row(const std::string& inst, const std::string& cfg, bool solved,
              double t) {
  RunRecord r;
  r.instance = inst;
  r.config = cfg;
  r.solved = solved;
  r.wall_time_s = t;
  return r;
}

}  // namespace

TEST_CASE("summarize: identical configurations give speedup exactly 1") {
  std::vector<RunRecord> rows = {row("i0_a4_x", "base", true, 2.0),
                                 row("i1_a4_x", "base", true, 5.0)};
  auto test_rows = rows;
  for (auto& r : test_rows) r.config = "test";
  rows.insert(rows.end(), test_rows.begin(), test_rows.end());
  const auto s = summarize(rows, "base", "test");
  REQUIRE(s.speedup_available);
  CHECK(s.geometric_mean_speedup == 1.0);
  CHECK(s.mutual_count == 2);
}

TEST_CASE("summarize: geometric mean over the synthetic {2,8} vs {1,2} pair") {
  const std::vector<RunRecord> rows = {
      row("i0_a4_x", "base", true, 2.0), row("i1_a4_x", "base", true, 8.0),
      row("i0_a4_x", "test", true, 1.0), row("i1_a4_x", "test", true, 2.0)};
  const auto s = summarize(rows, "base", "test");
  REQUIRE(s.speedup_available);
  CHECK(s.geometric_mean_speedup == doctest::Approx(std::sqrt(8.0)).epsilon(1e-12));
  CHECK(s.base_avg_time_own == doctest::Approx(5.0));
  CHECK(s.test_avg_time_own == doctest::Approx(1.5));
}

TEST_CASE("summarize: one-sided timeouts are excluded from the mutual set") {
  const std::vector<RunRecord> rows = {
      row("i0_a4_x", "base", true, 2.0), row("i1_a4_x", "base", false, 30.0),
      row("i0_a4_x", "test", true, 1.0), row("i1_a4_x", "test", true, 2.0)};
  const auto s = summarize(rows, "base", "test");
  CHECK(s.mutual_count == 1);
  CHECK(s.geometric_mean_speedup == doctest::Approx(2.0));
  CHECK(s.base_unsolved == 1);
  CHECK(s.test_unsolved == 0);
  CHECK(s.base_success_rate == doctest::Approx(50.0));
}

TEST_CASE("summarize: empty mutual set marks speedup unavailable") {
  const std::vector<RunRecord> rows = {row("i0_a4_x", "base", false, 30.0),
                                       row("i0_a4_x", "test", true, 1.0)};
  const auto s = summarize(rows, "base", "test");
  CHECK(!s.speedup_available);
  CHECK(s.mutual_count == 0);
}

TEST_CASE("agent count parsed from instance names") {
  CHECK(agents_from_instance_name("m25_a4_d0_s1_i003.yaml") == 4);
  CHECK(agents_from_instance_name("m50_a12_d20_s9_i000.yaml") == 12);
  CHECK(agents_from_instance_name("no-marker.yaml") == -1);
}

TEST_CASE("generate_suite is deterministic and produces valid instances") {
  GenParams params;
  params.seed = 5;
  params.map_size = 25;
  params.agents = 4;
  params.density = 0.05;
  params.count = 3;
  const std::string d1 = "gen_a", d2 = "gen_b";
  const auto f1 = generate_suite(params, d1);
  const auto f2 = generate_suite(params, d2);
  REQUIRE(f1.size() == 3);
  REQUIRE(f2.size() == 3);
  for (std::size_t i = 0; i < f1.size(); ++i) {
    std::ifstream a(f1[i]), b(f2[i]);
    const std::string sa((std::istreambuf_iterator<char>(a)),
                         std::istreambuf_iterator<char>());
    const std::string sb((std::istreambuf_iterator<char>(b)),
                         std::istreambuf_iterator<char>());
    CHECK(sa == sb);
    CHECK(!sa.empty());

    const Instance inst = load_instance(f1[i]);
    CHECK(validate_instance(inst).empty());
    REQUIRE(inst.agents.size() == 4);
    const double min_sep = 4.0 * inst.footprint_radius;
    for (std::size_t x = 0; x < inst.agents.size(); ++x) {
      for (std::size_t y = x + 1; y < inst.agents.size(); ++y) {
        CHECK(position_distance(inst.agents[x].start, inst.agents[y].start) >=
              min_sep);
        CHECK(position_distance(inst.agents[x].goal, inst.agents[y].goal) >=
              min_sep);
      }
    }
  }
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("generate_suite rejects an over-dense map") {
  GenParams params;
  params.map_size = 10;
  params.agents = 6;
  params.density = 0.5;
  params.count = 1;
  CHECK_THROWS(generate_suite(params, "gen_dense"));
  fs::remove_all("gen_dense");
}
