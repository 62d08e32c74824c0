#pragma once

#include <cstddef>
#include <cstdint>

#include "twc/model.hpp"

namespace twc {

/// Counts and seed for a synthetic scenario using the reference parameter set:
/// R = 20 km; radii TBS 2, GVBS 3, FBS 6, DBS 3 km; FBS backhaul to
/// TBS/GVBS/FBS/DBS 8/8/10/8 km and DBS to TBS/GVBS/FBS/DBS 5/5/8/5 km;
/// FBS endurance 2 h; DBS battery 5 h; aircraft at 50 km/h; ground vehicles at
/// 30 km/h along straight lines.
///
/// Placement (all angles uniform):
///   TBS                      uniform over the disk of radius 0.5 R
///   GVBS reachable locations radius in [0.85 R, 0.95 R]
///   GVBS depots              radius in [1.1 R, 1.3 R]
///   aerial depots            `aerial_centers` points at radius in [1.0 R, 1.1 R],
///                            evenly spaced in angle with a random offset;
///                            FBS/DBS i starts at depot i mod aerial_centers
struct ScenarioParams {
  std::size_t tbs = 3;
  std::size_t gvbs = 3;
  std::size_t gvbs_locations = 8;
  std::size_t fbs = 10;
  std::size_t dbs = 5;
  std::size_t aerial_centers = 2;
  double horizon = 5.0;
  WeightFunction weight = WeightFunction::constant();
  std::uint64_t seed = 2020;

  /// 50 FBS, 20 DBS, 12 h horizon.
  static ScenarioParams large();
};

/// Throws std::invalid_argument on impossible counts (GVBS without any
/// reachable location, aerial units without a depot, non-positive horizon).
Scenario generate_scenario(const ScenarioParams& params);

}  // namespace twc
