#include "twc/scenario_gen.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace twc {

namespace {

constexpr double kRadius = 20.0;
constexpr double kGroundSpeed = 30.0;

Point polar(double r, double angle) { return {r * std::cos(angle), r * std::sin(angle)}; }

}  // namespace

ScenarioParams ScenarioParams::large() {
  ScenarioParams p;
  p.fbs = 50;
  p.dbs = 20;
  p.horizon = 12.0;
  return p;
}

Scenario generate_scenario(const ScenarioParams& params) {
  if (params.gvbs > 0 && params.gvbs_locations == 0) {
    throw std::invalid_argument("GVBSs need at least one reachable location");
  }
  if ((params.fbs > 0 || params.dbs > 0) && params.aerial_centers == 0) {
    throw std::invalid_argument("aerial units need at least one aerial center");
  }
  if (!(params.horizon > 0.0)) throw std::invalid_argument("horizon must be positive");

  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto angle = [&] { return 2.0 * std::numbers::pi * unit(rng); };
  auto between = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  Scenario s;
  s.disaster_radius = kRadius;
  s.tbs_radius = 2.0;
  s.gvbs_radius = 3.0;
  s.fbs_radius = 6.0;
  s.dbs_radius = 3.0;
  s.fbs_speed = 50.0;
  s.dbs_speed = 50.0;
  s.fbs_endurance = 2.0;
  s.dbs_operating_time = 5.0;
  s.horizon = params.horizon;
  s.weight = params.weight;

  auto& bt = s.backhaul_thresholds;
  bt.set(NodeKind::FBS, NodeKind::TBS, 8.0);
  bt.set(NodeKind::FBS, NodeKind::GVBS, 8.0);
  bt.set(NodeKind::FBS, NodeKind::FBS, 10.0);
  bt.set_symmetric(NodeKind::FBS, NodeKind::DBS, 8.0);
  bt.set(NodeKind::DBS, NodeKind::TBS, 5.0);
  bt.set(NodeKind::DBS, NodeKind::GVBS, 5.0);
  bt.set(NodeKind::DBS, NodeKind::DBS, 5.0);

  for (std::size_t m = 0; m < params.tbs; ++m) {
    // sqrt keeps the density uniform over the inner disk.
    s.tbs_locations.push_back(polar(0.5 * kRadius * std::sqrt(unit(rng)), angle()));
  }

  for (std::size_t n = 0; n < params.gvbs_locations; ++n) {
    s.gvbs_reachable_locations.push_back(polar(between(0.85, 0.95) * kRadius, angle()));
  }
  s.gvbs_count = static_cast<int>(params.gvbs);
  for (std::size_t g = 0; g < params.gvbs; ++g) {
    const Point depot = polar(between(1.1, 1.3) * kRadius, angle());
    std::vector<double> row;
    for (const auto& loc : s.gvbs_reachable_locations) {
      row.push_back(travel_hours(depot, loc, kGroundSpeed));
    }
    s.gvbs_travel_time.push_back(std::move(row));
  }

  std::vector<Point> centers;
  const double offset = angle();
  for (std::size_t c = 0; c < params.aerial_centers; ++c) {
    const double a = offset + 2.0 * std::numbers::pi * static_cast<double>(c) /
                                  static_cast<double>(params.aerial_centers);
    centers.push_back(polar(between(1.0, 1.1) * kRadius, a));
  }
  for (std::size_t u = 0; u < params.fbs; ++u) s.fbs_initial.push_back(centers[u % centers.size()]);
  for (std::size_t k = 0; k < params.dbs; ++k) s.dbs_initial.push_back(centers[k % centers.size()]);
  return s;
}

}  // namespace twc
