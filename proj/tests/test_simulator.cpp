#include <stdexcept>
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "twc/metric.hpp"
#include "twc/simulator.hpp"

using namespace twc;
using twc::testing::bare_scenario;

namespace {

const CoverageGrid& grid() {
  static const CoverageGrid g(20.0, 0.1);
  return g;
}

// FBS depot 25 km from the origin: 0.5 h transit, 1 h on station.
Scenario fbs_scenario() {
  Scenario s = bare_scenario();
  s.tbs_locations = {{0, 0}};
  s.fbs_initial = {{25, 0}};
  return s;
}

}  // namespace

TEST_CASE("timeline for one FBS") {
  Scenario s = bare_scenario();
  s.fbs_initial = {{25, 0}};
  DeploymentPlan p;
  p.fbs_targets = {{0, 0}};
  p.fbs_dispatch = {1.0};
  const auto t = build_timeline(s, p);
  REQUIRE(t.size() == 2);
  CHECK(t[0] == Event{1.5, EventKind::FBSArrival, 0});
  CHECK(t[1] == Event{2.5, EventKind::FBSReturn, 0});
}

TEST_CASE("timeline drops instants at or past the horizon") {
  Scenario s = bare_scenario();
  s.dbs_initial = {{0, 25}};
  DeploymentPlan p;
  p.dbs_targets = {{0, 0}};
  p.dbs_dispatch = {4.0};
  const auto t = build_timeline(s, p);
  REQUIRE(t.size() == 1);
  CHECK(t[0] == Event{4.5, EventKind::DBSArrival, 0});

  CHECK(build_timeline(bare_scenario(), DeploymentPlan{}).empty());
}

TEST_CASE("timeline tie order puts removals first, then kind, then index") {
  Scenario s = bare_scenario();
  s.gvbs_count = 2;
  s.gvbs_reachable_locations = {{19, 0}, {-19, 0}};
  s.gvbs_travel_time = {{1.5, 1.5}, {1.5, 1.5}};
  s.dbs_initial = {{0, 0}};
  DeploymentPlan p;
  p.gvbs_assignment = {1, 0};
  s.fbs_initial = {{0, -5}, {0, 0}};
  p.fbs_targets = {{0, 20}, {0, 0}};  // FBS 0: [0.5, 1.5]
  p.fbs_dispatch = {0.0, 1.5};        // FBS 1: [1.5, 3.5]
  p.dbs_targets = {{0, 0}};
  p.dbs_dispatch = {1.5};             // DBS: [1.5, 6.5]
  const auto t = build_timeline(s, p);
  REQUIRE(t.size() == 7);
  CHECK(t[0] == Event{0.5, EventKind::FBSArrival, 0});
  CHECK(t[1] == Event{1.5, EventKind::FBSReturn, 0});
  CHECK(t[2] == Event{1.5, EventKind::GVBSArrival, 0});
  CHECK(t[3] == Event{1.5, EventKind::GVBSArrival, 1});
  CHECK(t[4] == Event{1.5, EventKind::FBSArrival, 1});
  CHECK(t[5] == Event{1.5, EventKind::DBSArrival, 0});
  CHECK(t[6] == Event{3.5, EventKind::FBSReturn, 1});
}

TEST_CASE("fixed point: FBS within range of a TBS is active") {
  Scenario s = bare_scenario();
  s.tbs_locations = {{0, 0}};
  s.fbs_initial = {{0, 0}};
  DeploymentPlan p;
  p.fbs_targets = {{7, 0}};
  p.fbs_dispatch = {0.0};
  const BackhaulGraph g(s, p);
  NetworkState st = NetworkState::initial(s);
  st.fbs[0] = UnitStatus::Inactive;
  CHECK(connectivity_fixed_point(st, g).fbs[0] == UnitStatus::Active);

  p.fbs_targets = {{50, 0}};
  const BackhaulGraph far(s, p);
  CHECK(connectivity_fixed_point(st, far).fbs[0] == UnitStatus::Inactive);
}

TEST_CASE("fixed point: relay chain and cascade") {
  Scenario s = bare_scenario();
  s.tbs_locations = {{0, 0}};
  s.fbs_initial = {{0, 0}};
  s.dbs_initial = {{0, 0}};
  DeploymentPlan p;
  p.fbs_targets = {{7, 0}};
  p.fbs_dispatch = {0.0};
  p.dbs_targets = {{14, 0}};
  p.dbs_dispatch = {0.0};
  const BackhaulGraph g(s, p);
  CHECK_FALSE(g.connected(*g.node_of(NodeKind::DBS, 0), *g.node_of(NodeKind::TBS, 0)));

  NetworkState st = NetworkState::initial(s);
  st.fbs[0] = UnitStatus::Inactive;
  st.dbs[0] = UnitStatus::Inactive;
  st = connectivity_fixed_point(st, g);
  CHECK(st.fbs[0] == UnitStatus::Active);
  CHECK(st.dbs[0] == UnitStatus::Active);

  st.fbs[0] = UnitStatus::Absent;
  st = connectivity_fixed_point(st, g);
  CHECK(st.dbs[0] == UnitStatus::Inactive);
  CHECK(st.fbs[0] == UnitStatus::Absent);
}

TEST_CASE("fixed point matches both oracles on random states") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> coord(-20.0, 20.0);
  std::uniform_int_distribution<int> count(0, 4);
  std::uniform_int_distribution<int> status(0, 2);
  for (int trial = 0; trial < 100; ++trial) {
    Scenario s = bare_scenario();
    const int tbs = count(rng) % 3;
    for (int m = 0; m < tbs; ++m) s.tbs_locations.push_back({coord(rng), coord(rng)});
    s.gvbs_count = 2;
    s.gvbs_reachable_locations = {{coord(rng), coord(rng)}, {coord(rng), coord(rng)}};
    s.gvbs_travel_time = {{0.0, 0.0}, {0.0, 0.0}};
    const int fbs = count(rng);
    const int dbs = count(rng);
    DeploymentPlan p;
    p.gvbs_assignment = {0, 1};
    for (int u = 0; u < fbs; ++u) {
      s.fbs_initial.push_back({0, 0});
      p.fbs_targets.push_back({coord(rng) * 0.5, coord(rng) * 0.5});
      p.fbs_dispatch.push_back(0.0);
    }
    for (int k = 0; k < dbs; ++k) {
      s.dbs_initial.push_back({0, 0});
      p.dbs_targets.push_back({coord(rng) * 0.5, coord(rng) * 0.5});
      p.dbs_dispatch.push_back(0.0);
    }
    const BackhaulGraph g(s, p);
    NetworkState st = NetworkState::initial(s);
    st.gvbs_arrived = {status(rng) == 0, status(rng) != 0};
    for (auto& f : st.fbs) f = static_cast<UnitStatus>(status(rng));
    for (auto& d : st.dbs) d = static_cast<UnitStatus>(status(rng));

    const auto fast = connectivity_fixed_point(st, g);
    CHECK(fast == oracle::brute_force_fixed_point(st, g));
    CHECK(fast == oracle::sweep_fixed_point(st, g));
    CHECK(connectivity_fixed_point(fast, g) == fast);  // idempotent
  }
}

TEST_CASE("TBS-only trace is flat") {
  Scenario s = bare_scenario();
  s.tbs_locations = {{0, 0}};
  const auto trace = simulate(s, DeploymentPlan{}, grid());
  REQUIRE(trace.segments().size() == 1);
  CHECK(trace.segments()[0].t_start == 0.0);
  CHECK(trace.segments()[0].t_end == 5.0);
  CHECK(std::abs(trace.segments()[0].fraction - 0.01) <= 0.002);
}

TEST_CASE("FBS over the TBS lifts coverage for its window") {
  Scenario s = fbs_scenario();
  s.fbs_endurance = 4.0;  // 0.5 h each way -> window [1, 4] when dispatched at 0.5
  DeploymentPlan p;
  p.fbs_targets = {{0, 0}};
  p.fbs_dispatch = {0.5};
  const auto trace = simulate(s, p, grid());
  REQUIRE(trace.segments().size() == 3);
  const auto& seg = trace.segments();
  CHECK(seg[0].t_end == doctest::Approx(1.0));
  CHECK(seg[1].t_end == doctest::Approx(4.0));
  CHECK(seg[2].t_end == 5.0);
  const double big = oracle::monte_carlo_fraction({{{0, 0}, 6.0}}, 20.0, 400'000, 1);
  CHECK(big == doctest::Approx(0.09).epsilon(0.03));
  CHECK(seg[0].fraction == doctest::Approx(0.01).epsilon(0.05));
  CHECK(std::abs(seg[1].fraction - big) <= 0.005);
  CHECK(seg[2].fraction == seg[0].fraction);
}

TEST_CASE("FBS relayed through a DBS loses service when the DBS dies") {
  Scenario s = bare_scenario();
  s.tbs_locations = {{0, 0}};
  s.dbs_operating_time = 3.0;
  s.fbs_endurance = 10.0;
  s.fbs_initial = {{12, 0}};
  s.dbs_initial = {{4, 0}};
  DeploymentPlan p;
  p.dbs_targets = {{4, 0}};  // no transit: window [0, 3]
  p.dbs_dispatch = {0.0};
  p.fbs_targets = {{12, 0}};  // 12 km from the TBS (> 8), 8 km from the DBS
  p.fbs_dispatch = {0.5};     // window [0.5, 5.5]
  const auto r = simulate_detailed(s, p, grid(), {.record_log = true, .record_states = true});
  const auto& seg = r.trace.segments();
  REQUIRE(seg.size() == 3);
  CHECK(seg[1].t_start == 0.5);
  CHECK(seg[1].t_end == 3.0);
  CHECK(seg[1].fraction > seg[0].fraction);
  CHECK(seg[2].fraction < seg[1].fraction);
  CHECK(seg[2].fraction == doctest::Approx(0.01).epsilon(0.05));
  const auto& last = r.states.back().second;
  CHECK(last.fbs[0] == UnitStatus::Inactive);
  CHECK(last.dbs[0] == UnitStatus::Absent);
  REQUIRE(r.aerial.size() == 2);
  CHECK(*r.aerial[0].arrival == 0.5);
  CHECK(*r.aerial[0].first_active == 0.5);
  CHECK(r.log.size() == 3);
  CHECK(r.log.back().inactive_fbs == 1);
}

TEST_CASE("late backhaul promotes a waiting FBS") {
  Scenario s = bare_scenario();
  s.fbs_endurance = 10.0;
  s.gvbs_count = 1;
  s.gvbs_reachable_locations = {{0, 0}};
  s.gvbs_travel_time = {{2.0}};
  s.fbs_initial = {{5, 0}};
  DeploymentPlan p;
  p.gvbs_assignment = {0};
  p.fbs_targets = {{5, 0}};
  p.fbs_dispatch = {0.0};
  const auto r = simulate_detailed(s, p, grid());
  REQUIRE(r.aerial.size() == 1);
  CHECK(*r.aerial[0].arrival == 0.0);
  CHECK(*r.aerial[0].first_active == 2.0);
  CHECK(r.trace.segments().size() == 2);
  CHECK(r.trace.segments()[0].fraction == 0.0);
}

TEST_CASE("simulate rejects mismatched plans and grids") {
  Scenario s = fbs_scenario();
  DeploymentPlan p;
  p.fbs_targets = {{0, 0}, {1, 1}};
  p.fbs_dispatch = {0.0, 0.0};
  CHECK_THROWS_AS(simulate(s, p, grid()), std::invalid_argument);
  CHECK_THROWS_AS(simulate(s, DeploymentPlan{}, CoverageGrid(10.0, 0.5)), std::invalid_argument);
}

TEST_CASE("random plans: trace shape and oracle equivalence after every event") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> coord(-20.0, 20.0);
  std::uniform_real_distribution<double> when(0.0, 5.0);
  const CoverageGrid coarse(20.0, 0.5);
  for (int trial = 0; trial < 40; ++trial) {
    Scenario s = bare_scenario();
    s.tbs_locations = {{coord(rng) * 0.4, coord(rng) * 0.4}};
    s.gvbs_count = 1;
    s.gvbs_reachable_locations = {{18, 0}, {0, -18}};
    s.gvbs_travel_time = {{when(rng), when(rng)}};
    DeploymentPlan p;
    p.gvbs_assignment = {static_cast<std::size_t>(trial % 2)};
    for (int u = 0; u < 4; ++u) {
      s.fbs_initial.push_back({21, 0});
      p.fbs_targets.push_back({coord(rng) * 0.6, coord(rng) * 0.6});
      p.fbs_dispatch.push_back(when(rng) * 0.8);
    }
    for (int k = 0; k < 4; ++k) {
      s.dbs_initial.push_back({-21, 0});
      p.dbs_targets.push_back({coord(rng) * 0.6, coord(rng) * 0.6});
      p.dbs_dispatch.push_back(when(rng) * 0.8);
    }
    const auto r = simulate_detailed(s, p, coarse, {.record_states = true});
    CHECK(r.trace.check().empty());
    double total = 0.0;
    for (const auto& seg : r.trace.segments()) total += seg.t_end - seg.t_start;
    CHECK(total == doctest::Approx(5.0).epsilon(1e-12));

    const BackhaulGraph g(s, p);
    for (std::size_t i = 0; i < r.states.size(); ++i) {
      const auto& st = r.states[i].second;
      CHECK(st == oracle::brute_force_fixed_point(st, g));
      // The coverage right after the instant equals a fresh union.
      const double expect = coverage_fraction(coarse, serving_disks(s, p, st));
      CHECK(r.trace.fraction_at(r.states[i].first + 1e-12) == expect);
    }

    // An extra TBS never lowers any segment.
    Scenario more = s;
    more.tbs_locations.push_back({coord(rng) * 0.5, coord(rng) * 0.5});
    const auto bigger = simulate(more, p, coarse);
    REQUIRE(bigger.segments().size() == r.trace.segments().size());
    for (std::size_t i = 0; i < bigger.segments().size(); ++i) {
      CHECK(bigger.segments()[i].fraction >= r.trace.segments()[i].fraction);
    }
  }
}

TEST_CASE("units with an empty window never serve") {
  Scenario s = fbs_scenario();
  DeploymentPlan p;
  s.fbs_endurance = 1.5;
  p.fbs_targets = {{-20, 0}};  // 45 km each way outlasts the endurance
  p.fbs_dispatch = {0.0};
  const auto r = simulate_detailed(s, p, grid(), {.record_states = true});
  CHECK(r.states.empty());
  CHECK(r.trace.segments().size() == 1);
  CHECK_FALSE(r.aerial[0].arrival);
}

TEST_CASE("simultaneous events resolve independently of processing order") {
  // A DBS relay dies exactly as a replacement arrives: the FBS stays served
  // past the instant.
  Scenario s = bare_scenario();
  s.tbs_locations = {{0, 0}};
  s.dbs_operating_time = 2.0;
  s.fbs_endurance = 10.0;
  s.fbs_initial = {{12, 0}};
  s.dbs_initial = {{4, 0}, {4, 0}};
  DeploymentPlan p;
  p.fbs_targets = {{12, 0}};
  p.fbs_dispatch = {0.0};
  p.dbs_targets = {{4, 0}, {4, 0}};
  p.dbs_dispatch = {0.0, 2.0};
  const auto r = simulate_detailed(s, p, grid(), {.record_states = true});
  REQUIRE(r.states.size() == 3);
  for (const auto& [t, st] : r.states) {
    if (t < 4.0) CHECK(st.fbs[0] == UnitStatus::Active);
  }
  // The replacement's own battery runs out at 4 h and strands the FBS.
  CHECK(r.states.back().second.fbs[0] == UnitStatus::Inactive);
}
