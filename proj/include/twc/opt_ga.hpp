#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "twc/geometry.hpp"
#include "twc/metric.hpp"
#include "twc/model.hpp"

namespace twc {

/// Aerial decision variables scaled to [0, 1]: (x, y, t) per FBS, then
/// (x, y, t) per DBS.
struct Genome {
  std::vector<double> genes;

  friend bool operator==(const Genome&, const Genome&) = default;
};

struct GaConfig {
  std::size_t population_size = 100;
  std::size_t generations = 200;
  double crossover_rate = 0.9;
  // Per-gene probability; unset means 1 / genome length.
  std::optional<double> mutation_rate;
  double mutation_scale = 0.1;
  std::size_t elite_count = 2;
  std::size_t tournament_size = 3;
  std::uint64_t rng_seed = 1;
  // Seed the first two individuals with heuristic_genome and relay_genome.
  bool seed_heuristic = true;
};

std::size_t genome_length(const Scenario& scenario);

/// Maps genes affinely to targets in [-R, R]^2 and dispatch times in
/// [0, horizon). Only the aerial fields of the returned plan are filled.
DeploymentPlan decode(const Genome& genome, const Scenario& scenario);

/// Inverse of decode for in-bounds aerial plans.
Genome encode(const DeploymentPlan& plan, const Scenario& scenario);

/// Time-weighted coverage of the fixed GVBS assignment combined with the
/// decoded aerial plan.
WeightedScore fitness(const Genome& genome, const Scenario& scenario,
                      const DeploymentPlan& fixed_gvbs_plan, const CoverageGrid& grid);

/// Every aerial unit sent at t = 0 toward the disaster center, stopping at
/// the innermost point of that line that is still within backhaul range of a
/// TBS or placed GVBS.
Genome heuristic_genome(const Scenario& scenario, const DeploymentPlan& fixed_gvbs_plan);

/// Staggered-relay plan: a few backhaul-connected stations are placed greedily
/// by added area, and units are timed in waves so that each station is taken
/// over as its previous occupant leaves. Tries every station count up to 12
/// per kind and returns the best by fitness; the fitness calls made are added
/// to `*evaluations` when given.
Genome relay_genome(const Scenario& scenario, const DeploymentPlan& fixed_gvbs_plan,
                    const CoverageGrid& grid, std::size_t* evaluations = nullptr);

struct GaResult {
  DeploymentPlan plan;  // fixed GVBS assignment plus the best aerial plan
  WeightedScore score;
  WeightedScore baseline;  // GVBS + TBS only
  Genome best;
  std::vector<double> history;  // best c_w of the initial population, then per generation
  std::size_t evaluations = 0;
};

/// Generational real-coded GA: tournament selection, per-gene blend
/// crossover, clamped Gaussian mutation and elitism. Fitness evaluation runs
/// in parallel; every random draw happens on the driver thread, so the result
/// depends only on (scenario, plan, cfg).
GaResult optimize_aerial(const Scenario& scenario, const DeploymentPlan& fixed_gvbs_plan,
                         const GaConfig& cfg, const CoverageGrid& grid);

}  // namespace twc
