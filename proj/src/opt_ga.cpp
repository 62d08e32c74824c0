#include "twc/opt_ga.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "twc/simulator.hpp"

namespace twc {

namespace {

// Keeps decoded dispatch times strictly below the horizon.
constexpr double kDispatchCeiling = 1.0 - 1e-9;

double to_coordinate(double gene, double radius) { return -radius + 2.0 * radius * gene; }
double to_gene(double coordinate, double radius) { return (coordinate + radius) / (2.0 * radius); }

}  // namespace

std::size_t genome_length(const Scenario& scenario) {
  return 3 * (scenario.fbs_count() + scenario.dbs_count());
}

DeploymentPlan decode(const Genome& genome, const Scenario& scenario) {
  if (genome.genes.size() != genome_length(scenario)) {
    throw std::invalid_argument("genome length does not match 3 * (U + K)");
  }
  const double R = scenario.disaster_radius;
  const double T = scenario.horizon;
  DeploymentPlan plan;
  std::size_t i = 0;
  auto next_unit = [&](std::vector<Point>& targets, std::vector<double>& dispatch) {
    const double x = to_coordinate(genome.genes[i], R);
    const double y = to_coordinate(genome.genes[i + 1], R);
    const double t = std::min(genome.genes[i + 2], kDispatchCeiling) * T;
    targets.push_back({x, y});
    dispatch.push_back(t);
    i += 3;
  };
  for (std::size_t u = 0; u < scenario.fbs_count(); ++u) next_unit(plan.fbs_targets, plan.fbs_dispatch);
  for (std::size_t k = 0; k < scenario.dbs_count(); ++k) next_unit(plan.dbs_targets, plan.dbs_dispatch);
  return plan;
}

Genome encode(const DeploymentPlan& plan, const Scenario& scenario) {
  if (plan.fbs_targets.size() != scenario.fbs_count() ||
      plan.dbs_targets.size() != scenario.dbs_count()) {
    throw std::invalid_argument("plan does not deploy every aerial unit");
  }
  const double R = scenario.disaster_radius;
  const double T = scenario.horizon;
  Genome genome;
  genome.genes.reserve(genome_length(scenario));
  auto push_unit = [&](const Point& p, double t) {
    genome.genes.push_back(to_gene(p.x, R));
    genome.genes.push_back(to_gene(p.y, R));
    genome.genes.push_back(t / T);
  };
  for (std::size_t u = 0; u < plan.fbs_targets.size(); ++u) push_unit(plan.fbs_targets[u], plan.fbs_dispatch[u]);
  for (std::size_t k = 0; k < plan.dbs_targets.size(); ++k) push_unit(plan.dbs_targets[k], plan.dbs_dispatch[k]);
  return genome;
}

namespace {

DeploymentPlan combine(const DeploymentPlan& fixed_gvbs_plan, DeploymentPlan aerial) {
  aerial.gvbs_assignment = fixed_gvbs_plan.gvbs_assignment;
  return aerial;
}

}  // namespace

WeightedScore fitness(const Genome& genome, const Scenario& scenario,
                      const DeploymentPlan& fixed_gvbs_plan, const CoverageGrid& grid) {
  const DeploymentPlan plan = combine(fixed_gvbs_plan, decode(genome, scenario));
  return time_weighted_coverage(simulate(scenario, plan, grid), scenario.weight);
}

Genome heuristic_genome(const Scenario& scenario, const DeploymentPlan& fixed_gvbs_plan) {
  struct Anchor {
    Point location;
    NodeKind kind;
  };
  std::vector<Anchor> anchors;
  for (const auto& p : scenario.tbs_locations) anchors.push_back({p, NodeKind::TBS});
  for (const auto& n : fixed_gvbs_plan.gvbs_assignment) {
    if (n) anchors.push_back({scenario.gvbs_reachable_locations.at(*n), NodeKind::GVBS});
  }

  const double R = scenario.disaster_radius;
  auto clamp_box = [R](Point p) {
    return Point{std::clamp(p.x, -R, R), std::clamp(p.y, -R, R)};
  };

  auto place = [&](const Point& depot, NodeKind kind) {
    constexpr int kSteps = 200;
    // Walk from the center outward; the first reachable point is the
    // innermost one.
    for (int s = 0; s <= kSteps; ++s) {
      const double f = static_cast<double>(s) / kSteps;
      const Point p = clamp_box({depot.x * f, depot.y * f});
      for (const auto& a : anchors) {
        if (distance(p, a.location) <= scenario.backhaul_thresholds.threshold(kind, a.kind)) return p;
      }
    }
    return clamp_box(depot);
  };

  DeploymentPlan plan;
  for (const auto& depot : scenario.fbs_initial) {
    plan.fbs_targets.push_back(place(depot, NodeKind::FBS));
    plan.fbs_dispatch.push_back(0.0);
  }
  for (const auto& depot : scenario.dbs_initial) {
    plan.dbs_targets.push_back(place(depot, NodeKind::DBS));
    plan.dbs_dispatch.push_back(0.0);
  }
  return encode(plan, scenario);
}

namespace {

struct Station {
  Point location;
  NodeKind kind;
};

// Greedy chain of stations: each new station is the lattice point adding the
// most uncovered area among those within backhaul range of an anchor or an
// earlier station.
class StationPlanner {
 public:
  StationPlanner(const Scenario& scenario, const DeploymentPlan& fixed_gvbs_plan)
      : scenario_(scenario), grid_(scenario.disaster_radius, 0.5), cover_(grid_) {
    for (const auto& p : scenario.tbs_locations) {
      nodes_.push_back({p, NodeKind::TBS});
      cover_.add({p, scenario.tbs_radius});
    }
    for (const auto& n : fixed_gvbs_plan.gvbs_assignment) {
      if (!n) continue;
      const Point p = scenario.gvbs_reachable_locations.at(*n);
      nodes_.push_back({p, NodeKind::GVBS});
      cover_.add({p, scenario.gvbs_radius});
    }
    const double R = scenario.disaster_radius;
    const int steps = static_cast<int>(std::floor(R));
    for (int i = -steps; i <= steps; ++i) {
      for (int j = -steps; j <= steps; ++j) {
        const Point p{R * i / steps, R * j / steps};
        if (std::hypot(p.x, p.y) <= R) lattice_.push_back(p);
      }
    }
  }

  /// Appends up to `count` stations of `kind`; stops early when nothing is
  /// reachable.
  void place(NodeKind kind, std::size_t count) {
    const double radius = scenario_.radius_of(kind);
    for (std::size_t c = 0; c < count; ++c) {
      std::optional<Point> best;
      std::size_t best_covered = 0;
      for (const auto& p : lattice_) {
        if (!reachable(p, kind)) continue;
        cover_.add({p, radius});
        const std::size_t covered = cover_.covered();
        cover_.remove({p, radius});
        if (!best || covered > best_covered) {
          best = p;
          best_covered = covered;
        }
      }
      if (!best) return;
      nodes_.push_back({*best, kind});
      stations_.push_back({*best, kind});
      cover_.add({*best, radius});
    }
  }

  const std::vector<Station>& stations() const { return stations_; }

 private:
  bool reachable(const Point& p, NodeKind kind) const {
    for (const auto& n : nodes_) {
      if (distance(p, n.location) <= scenario_.backhaul_thresholds.threshold(kind, n.kind)) return true;
    }
    return false;
  }

  const Scenario& scenario_;
  CoverageGrid grid_;
  CoverageAccumulator cover_;
  std::vector<Station> nodes_;
  std::vector<Station> stations_;
  std::vector<Point> lattice_;
};

// Keeps every station of one kind occupied for as long as the fleet lasts:
// whenever a station falls free, the unused unit that can hold it the longest
// is timed to arrive right then. Units left over are sent too late to arrive.
void schedule_relay(const Scenario& scenario, NodeKind kind, const std::vector<Point>& stations,
                    std::vector<Point>& targets, std::vector<double>& dispatch) {
  const bool fbs = kind == NodeKind::FBS;
  const auto& depots = fbs ? scenario.fbs_initial : scenario.dbs_initial;
  const double speed = fbs ? scenario.fbs_speed : scenario.dbs_speed;
  const double T = scenario.horizon;
  const Point idle = stations.empty() ? Point{} : stations.front();
  targets.assign(depots.size(), idle);
  dispatch.assign(depots.size(), T * kDispatchCeiling);
  if (stations.empty()) return;

  std::vector<double> free_at(stations.size(), 0.0);
  std::vector<bool> used(depots.size(), false);
  while (true) {
    const auto s = static_cast<std::size_t>(
        std::min_element(free_at.begin(), free_at.end()) - free_at.begin());
    if (free_at[s] >= T) return;
    std::optional<std::size_t> pick;
    double pick_depart = 0.0;
    double pick_dispatch = 0.0;
    for (std::size_t u = 0; u < depots.size(); ++u) {
      if (used[u]) continue;
      const double transit = travel_hours(depots[u], stations[s], speed);
      const double service = fbs ? scenario.fbs_endurance - 2.0 * transit : scenario.dbs_operating_time;
      if (service <= 0.0) continue;
      const double t = std::max(0.0, free_at[s] - transit);
      if (t >= T * kDispatchCeiling) continue;
      const double depart = t + transit + service;
      if (!pick || depart > pick_depart) {
        pick = u;
        pick_depart = depart;
        pick_dispatch = t;
      }
    }
    if (!pick) return;
    used[*pick] = true;
    targets[*pick] = stations[s];
    dispatch[*pick] = pick_dispatch;
    free_at[s] = pick_depart;
  }
}

}  // namespace

Genome relay_genome(const Scenario& scenario, const DeploymentPlan& fixed_gvbs_plan,
                    const CoverageGrid& grid, std::size_t* evaluations) {
  constexpr std::size_t kMaxStations = 12;
  const std::size_t max_fbs = std::min(scenario.fbs_count(), kMaxStations);
  const std::size_t max_dbs = std::min(scenario.dbs_count(), kMaxStations);

  std::optional<Genome> best;
  double best_score = 0.0;
  std::size_t count = 0;
  for (std::size_t nf = 0; nf <= max_fbs; ++nf) {
    StationPlanner planner(scenario, fixed_gvbs_plan);
    planner.place(NodeKind::FBS, nf);
    std::vector<Point> fbs_stations;
    for (const auto& st : planner.stations()) fbs_stations.push_back(st.location);
    planner.place(NodeKind::DBS, max_dbs);
    std::vector<Point> all_dbs;
    for (const auto& st : planner.stations()) {
      if (st.kind == NodeKind::DBS) all_dbs.push_back(st.location);
    }

    for (std::size_t nd = 0; nd <= all_dbs.size(); ++nd) {
      // Greedy placement is prefix-stable, so the first nd DBS stations are
      // what a run with nd stations would have placed.
      const std::vector<Point> dbs_stations(all_dbs.begin(), all_dbs.begin() + nd);
      DeploymentPlan plan;
      schedule_relay(scenario, NodeKind::FBS, fbs_stations, plan.fbs_targets, plan.fbs_dispatch);
      schedule_relay(scenario, NodeKind::DBS, dbs_stations, plan.dbs_targets, plan.dbs_dispatch);
      Genome g = encode(plan, scenario);
      const double score = fitness(g, scenario, fixed_gvbs_plan, grid).c_w;
      ++count;
      if (!best || score > best_score) {
        best = std::move(g);
        best_score = score;
      }
    }
  }
  if (evaluations) *evaluations += count;
  return best ? *best : heuristic_genome(scenario, fixed_gvbs_plan);
}

namespace {

void check_config(const GaConfig& cfg) {
  if (cfg.population_size < 2) throw std::invalid_argument("population_size must be at least 2");
  if (cfg.elite_count >= cfg.population_size) {
    throw std::invalid_argument("elite_count must be below population_size");
  }
  if (cfg.tournament_size < 1) throw std::invalid_argument("tournament_size must be at least 1");
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(cfg.crossover_rate)) throw std::invalid_argument("crossover_rate must be in [0, 1]");
  if (cfg.mutation_rate && !unit(*cfg.mutation_rate)) {
    throw std::invalid_argument("mutation_rate must be in [0, 1]");
  }
  if (!(cfg.mutation_scale >= 0.0)) throw std::invalid_argument("mutation_scale must be non-negative");
}

}  // namespace

GaResult optimize_aerial(const Scenario& scenario, const DeploymentPlan& fixed_gvbs_plan,
                         const GaConfig& cfg, const CoverageGrid& grid) {
  check_config(cfg);

  GaResult result;
  {
    DeploymentPlan baseline_plan;
    baseline_plan.gvbs_assignment = fixed_gvbs_plan.gvbs_assignment;
    result.baseline = time_weighted_coverage(simulate(scenario, baseline_plan, grid), scenario.weight);
  }

  const std::size_t length = genome_length(scenario);
  if (length == 0) {
    result.plan.gvbs_assignment = fixed_gvbs_plan.gvbs_assignment;
    result.score = result.baseline;
    return result;
  }

  const std::size_t P = cfg.population_size;
  const double mutation_rate = cfg.mutation_rate.value_or(1.0 / static_cast<double>(length));
  std::mt19937_64 rng(cfg.rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, cfg.mutation_scale);
  std::uniform_int_distribution<std::size_t> pick(0, P - 1);

  std::vector<Genome> population(P);
  for (auto& g : population) {
    g.genes.resize(length);
    for (auto& gene : g.genes) gene = unit(rng);
  }
  if (cfg.seed_heuristic) {
    population[0] = heuristic_genome(scenario, fixed_gvbs_plan);
    population[1] = relay_genome(scenario, fixed_gvbs_plan, grid, &result.evaluations);
  }

  std::vector<double> score(P, 0.0);
  auto evaluate = [&](std::size_t first) {
    const auto end = static_cast<long>(P);
#pragma omp parallel for schedule(dynamic)
    for (long i = static_cast<long>(first); i < end; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      score[idx] = fitness(population[idx], scenario, fixed_gvbs_plan, grid).c_w;
    }
    result.evaluations += P - first;
  };

  std::vector<std::size_t> order(P);
  auto rank = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
  };

  evaluate(0);
  rank();
  result.history.push_back(score[order[0]]);

  auto tournament = [&]() -> const Genome& {
    std::size_t best = pick(rng);
    for (std::size_t i = 1; i < cfg.tournament_size; ++i) {
      const std::size_t challenger = pick(rng);
      if (score[challenger] > score[best] ||
          (score[challenger] == score[best] && challenger < best)) {
        best = challenger;
      }
    }
    return population[best];
  };
  auto mutate = [&](Genome& g) {
    for (auto& gene : g.genes) {
      if (unit(rng) < mutation_rate) gene = std::clamp(gene + noise(rng), 0.0, 1.0);
    }
  };

  for (std::size_t gen = 0; gen < cfg.generations; ++gen) {
    std::vector<Genome> next;
    std::vector<double> next_score;
    next.reserve(P);
    for (std::size_t e = 0; e < cfg.elite_count; ++e) {
      next.push_back(population[order[e]]);
      next_score.push_back(score[order[e]]);
    }
    while (next.size() < P) {
      Genome a = tournament();
      Genome b = tournament();
      if (unit(rng) < cfg.crossover_rate) {
        for (std::size_t i = 0; i < length; ++i) {
          const double lambda = unit(rng);
          const double x = a.genes[i];
          const double y = b.genes[i];
          a.genes[i] = lambda * x + (1.0 - lambda) * y;
          b.genes[i] = (1.0 - lambda) * x + lambda * y;
        }
      }
      mutate(a);
      mutate(b);
      next.push_back(std::move(a));
      if (next.size() < P) next.push_back(std::move(b));
    }
    population = std::move(next);
    std::copy(next_score.begin(), next_score.end(), score.begin());
    evaluate(cfg.elite_count);
    rank();
    result.history.push_back(score[order[0]]);
  }

  result.best = population[order[0]];
  result.plan = combine(fixed_gvbs_plan, decode(result.best, scenario));
  result.score = time_weighted_coverage(simulate(scenario, result.plan, grid), scenario.weight);
  return result;
}

}  // namespace twc
