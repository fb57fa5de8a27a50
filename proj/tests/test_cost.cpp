#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gnsstrade/cost.hpp"

using namespace gnsstrade;
using namespace gnsstrade::cost;
using Catch::Approx;

TEST_CASE("bus selection picks the cheapest compatible platform") {
  auto catalog = default_bus_catalog();
  REQUIRE(select_bus(410.6, catalog).bus.unit_cost_musd == Approx(39.90));
  REQUIRE(select_bus(410.6, catalog).bus.name == "SSTL 600");
  REQUIRE(select_bus(788.8, catalog).bus.unit_cost_musd == Approx(49.72));
  REQUIRE(select_bus(915.0, catalog).bus.unit_cost_musd == Approx(59.94));
  REQUIRE(select_bus(915.0, catalog).bus.name == "AS-4000");
  REQUIRE(select_bus(300.0, catalog).bus.unit_cost_musd == Approx(23.11));
  REQUIRE_FALSE(select_bus(915.0, catalog).extrapolated);

  // Beyond the largest entry: linear mass extrapolation, flagged.
  auto big = select_bus(4538.0, catalog);
  REQUIRE(big.extrapolated);
  REQUIRE(big.bus.unit_cost_musd == Approx(209.47 * 4538.0 / 2269.0).epsilon(1e-12));
  REQUIRE_THROWS_AS(select_bus(0.0, catalog), ModelError);
}

TEST_CASE("flight units over the horizon") {
  REQUIRE(flight_units(24, 15) == 48);
  REQUIRE(flight_units(840, 15) == 1680);
  REQUIRE(flight_units(24, 5) == 144);
  REQUIRE(flight_units(27, 30) == 27);  // one generation
  REQUIRE_THROWS_AS(flight_units(24, 7), ModelError);
}

TEST_CASE("learning-curve production cost") {
  REQUIRE(production_cost_musd(40.0, 1, 0.85) == Approx(40.0).epsilon(1e-12));
  REQUIRE(production_cost_musd(40.0, 17, 1.0) == Approx(40.0 * 17).epsilon(1e-12));

  // Doubling the units multiplies the cost by 2^(1 + log2(0.85)).
  double factor = std::pow(2.0, 1.0 + std::log(0.85) / std::log(2.0));
  REQUIRE(factor == Approx(1.70).margin(0.005));
  REQUIRE(production_cost_musd(40.0, 96, 0.85) / production_cost_musd(40.0, 48, 0.85) ==
          Approx(factor).epsilon(1e-12));

  // Reference constellation production: 48 units of the 39.9 bus.
  double prod = production_cost_musd(39.90, 48, 0.85);
  REQUIRE(prod == Approx(39.90 * std::pow(48.0, 1.0 + std::log(0.85) / std::log(2.0))).epsilon(1e-12));
  REQUIRE(prod == Approx(772.7).margin(1.0));
  REQUIRE_THROWS_AS(production_cost_musd(40.0, 0, 0.85), ModelError);
  REQUIRE_THROWS_AS(production_cost_musd(40.0, 10, 0.0), ModelError);
}

TEST_CASE("launcher performance regression") {
  REQUIRE(soyuz_performance_kg(780.0) == Approx(-934.4 * std::log(780.0) + 11333.0).epsilon(1e-12));
  REQUIRE(soyuz_performance_kg(780.0) == Approx(5110.6).margin(1.0));
  REQUIRE(soyuz_performance_kg(20188.0) == Approx(2070.0).margin(1.0));
  REQUIRE(soyuz_performance_kg(780.0) > soyuz_performance_kg(1250.0));
  REQUIRE(soyuz_performance_kg(20188.0) > soyuz_performance_kg(30967.0));
  REQUIRE_THROWS_AS(soyuz_performance_kg(2.0e5), ModelError);  // beyond capability
}

TEST_CASE("launch plans for the published manifests") {
  // Reference MEO constellation: 4 satellites per vehicle, 12 launches.
  LaunchPlan gps = launch_plan(434.0, 20188.0, 6, 4, 2);
  REQUIRE(gps.sats_per_vehicle == 4);
  REQUIRE(gps.n_launches == 12);
  REQUIRE(gps.cost_musd == Approx(582.0).epsilon(1e-12));

  // 27 satellites in 3 planes, 9 per plane.
  LaunchPlan gal = launch_plan(480.8, 23229.0, 3, 9, 2);
  REQUIRE(gal.n_launches == 18);
  REQUIRE(gal.cost_musd == Approx(873.0).epsilon(1e-12));

  // Large LEO deployment: 16 per vehicle, 96 launches.
  LaunchPlan leo = launch_plan(305.5, 780.0, 24, 30, 2);
  REQUIRE(leo.sats_per_vehicle == 16);
  REQUIRE(leo.n_launches == 96);
  REQUIRE(leo.cost_musd == Approx(4656.0).epsilon(1e-12));

  // Low-MEO 30-satellite deployment.
  LaunchPlan low = launch_plan(355.4, 12525.0, 3, 10, 2);
  REQUIRE(low.sats_per_vehicle == 7);
  REQUIRE(low.n_launches == 12);
  REQUIRE(low.cost_musd == Approx(582.0).epsilon(1e-12));

  // Launch count is an integer multiple of planes x generations.
  REQUIRE(gps.n_launches % (6 * 2) == 0);
  REQUIRE(leo.n_launches % (24 * 2) == 0);
}

TEST_CASE("per-kg branch above the launcher performance") {
  double perf = soyuz_performance_kg(30967.0);
  LaunchPlan heavy = launch_plan(perf + 100.0, 30967.0, 4, 6, 2);
  REQUIRE(heavy.per_kg_branch);
  REQUIRE(heavy.n_launches == 48);  // reported as flight units
  REQUIRE(heavy.cost_musd == Approx(0.025 * (perf + 100.0) * 48).epsilon(1e-12));

  // The boundary itself stays on the fixed-price branch.
  LaunchPlan edge = launch_plan(perf, 30967.0, 4, 6, 2);
  REQUIRE_FALSE(edge.per_kg_branch);
  REQUIRE(edge.sats_per_vehicle == 1);
}

TEST_CASE("launch discount applies to both branches") {
  LaunchPlan soyuz = launch_plan(434.0, 20188.0, 6, 4, 2, 0.40);
  REQUIRE(soyuz.cost_musd == Approx(582.0 * 0.6).epsilon(1e-12));
  double perf = soyuz_performance_kg(30967.0);
  LaunchPlan falcon = launch_plan(perf + 100.0, 30967.0, 4, 6, 2, 0.40);
  REQUIRE(falcon.cost_musd == Approx(0.025 * (perf + 100.0) * 48 * 0.6).epsilon(1e-12));
}

TEST_CASE("total cost assembly") {
  CostBreakdown base = total_cost(772.7, 582.0, 0.0, 24);
  REQUIRE(base.operations_musd == 0.0);
  REQUIRE(base.total_busd == Approx((772.7 + 582.0) / 1000.0).epsilon(1e-12));

  CostBreakdown ops = total_cost(0.0, 0.0, 2.0, 84);
  REQUIRE(ops.operations_musd == Approx(2.0 * 84 * 30).epsilon(1e-12));
  REQUIRE(ops.total_busd == Approx(5.04).epsilon(1e-12));
  REQUIRE_THROWS_AS(total_cost(-1.0, 0.0, 0.0, 24), ModelError);
}
