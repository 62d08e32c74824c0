#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "twc/geometry.hpp"
#include "twc/metric.hpp"
#include "twc/model.hpp"

namespace twc {

struct GvbsSearchConfig {
  // Pairs with travel time at or above this are never considered.
  double time_threshold = std::numeric_limits<double>::infinity();
  std::size_t max_evaluations = 1'000'000;

  /// Horizon / 4.
  static GvbsSearchConfig defaults_for(const Scenario& scenario);
};

/// (gvbs, location) pairs whose travel time is strictly below the threshold.
std::vector<std::pair<std::size_t, std::size_t>> feasible_pairs(const Scenario& scenario,
                                                                const GvbsSearchConfig& cfg);

struct GvbsResult {
  DeploymentPlan plan;  // only gvbs_assignment is filled
  WeightedScore score;
  std::size_t evaluations = 0;
  bool truncated = false;
};

/// Enumerates the maximal injective GVBS-to-location assignments over the
/// feasible pairs (no unassigned GVBS could still take a free feasible
/// location) and keeps the one with the highest time-weighted coverage, aerial
/// fleets held back. Ties go to the lexicographically smallest assignment vector, with
/// "unassigned" ordered after every location index.
GvbsResult optimize_gvbs(const Scenario& scenario, const GvbsSearchConfig& cfg,
                         const CoverageGrid& grid);

/// Time-weighted coverage of a GVBS-only plan; the unit of work inside the
/// enumerator.
WeightedScore score_gvbs_assignment(const Scenario& scenario,
                                    const std::vector<std::optional<std::size_t>>& assignment,
                                    const CoverageGrid& grid);

}  // namespace twc
