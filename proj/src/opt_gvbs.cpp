#include "twc/opt_gvbs.hpp"

#include <stdexcept>

#include "twc/simulator.hpp"

namespace twc {

GvbsSearchConfig GvbsSearchConfig::defaults_for(const Scenario& scenario) {
  GvbsSearchConfig cfg;
  cfg.time_threshold = scenario.horizon / 4.0;
  return cfg;
}

std::vector<std::pair<std::size_t, std::size_t>> feasible_pairs(const Scenario& scenario,
                                                                const GvbsSearchConfig& cfg) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t g = 0; g < scenario.gvbs_travel_time.size(); ++g) {
    const auto& row = scenario.gvbs_travel_time[g];
    for (std::size_t n = 0; n < row.size(); ++n) {
      if (row[n] < cfg.time_threshold) pairs.emplace_back(g, n);
    }
  }
  return pairs;
}

WeightedScore score_gvbs_assignment(const Scenario& scenario,
                                    const std::vector<std::optional<std::size_t>>& assignment,
                                    const CoverageGrid& grid) {
  DeploymentPlan plan;
  plan.gvbs_assignment = assignment;
  return time_weighted_coverage(simulate(scenario, plan, grid), scenario.weight);
}

namespace {

using Assignment = std::vector<std::optional<std::size_t>>;

// Lexicographic order with nullopt after every location index.
bool lex_less(const Assignment& a, const Assignment& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    if (!a[i]) return false;
    if (!b[i]) return true;
    return *a[i] < *b[i];
  }
  return false;
}

class Enumerator {
 public:
  Enumerator(std::vector<std::vector<std::size_t>> options, std::size_t locations,
             std::size_t cap)
      : options_(std::move(options)), taken_(locations, false), cap_(cap) {
    current_.assign(options_.size(), std::nullopt);
  }

  std::vector<Assignment> run() {
    visit(0);
    return std::move(out_);
  }
  bool truncated() const { return truncated_; }

 private:
  // Leaving a GVBS parked is only worth trying when another GVBS can take
  // its spot; the leaf check drops assignments where some parked GVBS still
  // has a free feasible location.
  void visit(std::size_t g) {
    if (truncated_) return;
    if (g == options_.size()) {
      if (!maximal()) return;
      if (out_.size() == cap_) {
        truncated_ = true;
        return;
      }
      out_.push_back(current_);
      return;
    }
    for (std::size_t n : options_[g]) {
      if (taken_[n]) continue;
      taken_[n] = true;
      current_[g] = n;
      visit(g + 1);
      current_[g] = std::nullopt;
      taken_[n] = false;
    }
    visit(g + 1);
  }

  bool maximal() const {
    for (std::size_t g = 0; g < options_.size(); ++g) {
      if (current_[g]) continue;
      for (std::size_t n : options_[g]) {
        if (!taken_[n]) return false;
      }
    }
    return true;
  }

  std::vector<std::vector<std::size_t>> options_;
  std::vector<bool> taken_;
  std::size_t cap_;
  Assignment current_;
  std::vector<Assignment> out_;
  bool truncated_ = false;
};

}  // namespace

GvbsResult optimize_gvbs(const Scenario& scenario, const GvbsSearchConfig& cfg,
                         const CoverageGrid& grid) {
  if (!(cfg.time_threshold > 0.0)) throw std::invalid_argument("time_threshold must be positive");
  if (cfg.max_evaluations < 1) throw std::invalid_argument("max_evaluations must be at least 1");

  const auto G = static_cast<std::size_t>(std::max(scenario.gvbs_count, 0));
  std::vector<std::vector<std::size_t>> options(G);
  for (const auto& [g, n] : feasible_pairs(scenario, cfg)) options[g].push_back(n);

  Enumerator enumerator(std::move(options), scenario.location_count(), cfg.max_evaluations);
  const std::vector<Assignment> candidates = enumerator.run();

  std::vector<WeightedScore> scores(candidates.size());
  const auto count = static_cast<long>(candidates.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    scores[static_cast<std::size_t>(i)] =
        score_gvbs_assignment(scenario, candidates[static_cast<std::size_t>(i)], grid);
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double a = scores[i].c_w;
    const double b = scores[best].c_w;
    if (a > b || (a == b && lex_less(candidates[i], candidates[best]))) best = i;
  }

  GvbsResult result;
  result.plan.gvbs_assignment = candidates[best];
  result.score = scores[best];
  result.evaluations = candidates.size();
  result.truncated = enumerator.truncated();
  return result;
}

}  // namespace twc
