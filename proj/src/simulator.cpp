#include "twc/simulator.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace twc {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::FBSReturn: return "FBSReturn";
    case EventKind::DBSDeath: return "DBSDeath";
    case EventKind::GVBSArrival: return "GVBSArrival";
    case EventKind::FBSArrival: return "FBSArrival";
    case EventKind::DBSArrival: return "DBSArrival";
  }
  return "?";
}

std::vector<Event> build_timeline(const Scenario& scenario, const DeploymentPlan& plan) {
  std::vector<Event> events;
  const double horizon = scenario.horizon;
  auto push = [&](double t, EventKind kind, std::size_t unit) {
    if (t < horizon) events.push_back({t, kind, unit});
  };

  for (std::size_t g = 0; g < plan.gvbs_assignment.size(); ++g) {
    if (const auto w = gvbs_window(scenario, plan, g)) push(w->arrive, EventKind::GVBSArrival, g);
  }
  for (std::size_t u = 0; u < plan.fbs_targets.size(); ++u) {
    const auto w = fbs_window(scenario, plan, u);
    if (w.empty()) continue;
    push(w.arrive, EventKind::FBSArrival, u);
    push(w.depart, EventKind::FBSReturn, u);
  }
  for (std::size_t k = 0; k < plan.dbs_targets.size(); ++k) {
    const auto w = dbs_window(scenario, plan, k);
    push(w.arrive, EventKind::DBSArrival, k);
    push(w.depart, EventKind::DBSDeath, k);
  }

  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.time != b.time) return a.time < b.time;
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.unit < b.unit;
  });
  return events;
}

NetworkState NetworkState::initial(const Scenario& scenario) {
  NetworkState s;
  s.gvbs_arrived.assign(static_cast<std::size_t>(std::max(scenario.gvbs_count, 0)), false);
  s.fbs.assign(scenario.fbs_count(), UnitStatus::Absent);
  s.dbs.assign(scenario.dbs_count(), UnitStatus::Absent);
  return s;
}

namespace {

std::vector<std::size_t> indices_with(const std::vector<UnitStatus>& units, UnitStatus status) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (units[i] == status) out.push_back(i);
  }
  return out;
}

}  // namespace

std::vector<std::size_t> NetworkState::arrived_gvbs() const {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < gvbs_arrived.size(); ++g) {
    if (gvbs_arrived[g]) out.push_back(g);
  }
  return out;
}
std::vector<std::size_t> NetworkState::active_fbs() const {
  return indices_with(fbs, UnitStatus::Active);
}
std::vector<std::size_t> NetworkState::inactive_fbs() const {
  return indices_with(fbs, UnitStatus::Inactive);
}
std::vector<std::size_t> NetworkState::active_dbs() const {
  return indices_with(dbs, UnitStatus::Active);
}
std::vector<std::size_t> NetworkState::inactive_dbs() const {
  return indices_with(dbs, UnitStatus::Inactive);
}

BackhaulGraph::BackhaulGraph(const Scenario& scenario, const DeploymentPlan& plan) {
  for (std::size_t m = 0; m < scenario.tbs_locations.size(); ++m) {
    nodes_.push_back({NodeKind::TBS, m, scenario.tbs_locations[m]});
  }
  gvbs_node_.assign(plan.gvbs_assignment.size(), std::nullopt);
  for (std::size_t g = 0; g < plan.gvbs_assignment.size(); ++g) {
    if (!plan.gvbs_assignment[g]) continue;
    gvbs_node_[g] = nodes_.size();
    nodes_.push_back(
        {NodeKind::GVBS, g, scenario.gvbs_reachable_locations.at(*plan.gvbs_assignment[g])});
  }
  fbs_base_ = nodes_.size();
  has_fbs_ = plan.deploys_fbs();
  for (std::size_t u = 0; u < plan.fbs_targets.size(); ++u) {
    nodes_.push_back({NodeKind::FBS, u, plan.fbs_targets[u]});
  }
  dbs_base_ = nodes_.size();
  has_dbs_ = plan.deploys_dbs();
  for (std::size_t k = 0; k < plan.dbs_targets.size(); ++k) {
    nodes_.push_back({NodeKind::DBS, k, plan.dbs_targets[k]});
  }

  adjacency_.assign(nodes_.size(), {});
  const auto& table = scenario.backhaul_thresholds;
  // Anchors need no backhaul among themselves, so only pairs with an aerial
  // end (index >= fbs_base_) get edges.
  for (std::size_t b = fbs_base_; b < nodes_.size(); ++b) {
    for (std::size_t a = 0; a < b; ++a) {
      const double limit = table.threshold(nodes_[a].kind, nodes_[b].kind);
      if (distance(nodes_[a].location, nodes_[b].location) <= limit) {
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
      }
    }
  }
}

bool BackhaulGraph::connected(std::size_t a, std::size_t b) const {
  const auto& adj = adjacency_[a];
  return std::find(adj.begin(), adj.end(), b) != adj.end();
}

std::optional<std::size_t> BackhaulGraph::node_of(NodeKind kind, std::size_t unit) const {
  switch (kind) {
    case NodeKind::TBS: return unit < fbs_base_ ? std::optional(unit) : std::nullopt;
    case NodeKind::GVBS: return unit < gvbs_node_.size() ? gvbs_node_[unit] : std::nullopt;
    case NodeKind::FBS:
      return has_fbs_ && fbs_base_ + unit < dbs_base_ ? std::optional(fbs_base_ + unit)
                                                      : std::nullopt;
    case NodeKind::DBS:
      return has_dbs_ && dbs_base_ + unit < nodes_.size() ? std::optional(dbs_base_ + unit)
                                                          : std::nullopt;
  }
  return std::nullopt;
}

bool BackhaulGraph::present(const NetworkState& state, std::size_t node) const {
  const auto& n = nodes_[node];
  switch (n.kind) {
    case NodeKind::TBS: return true;
    case NodeKind::GVBS: return state.gvbs_arrived.at(n.unit);
    case NodeKind::FBS: return state.fbs.at(n.unit) != UnitStatus::Absent;
    case NodeKind::DBS: return state.dbs.at(n.unit) != UnitStatus::Absent;
  }
  return false;
}

NetworkState connectivity_fixed_point(const NetworkState& state, const BackhaulGraph& graph) {
  const auto& nodes = graph.nodes();
  std::vector<char> reached(nodes.size(), 0);
  std::vector<std::size_t> frontier;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (graph.is_anchor(i) && graph.present(state, i)) {
      reached[i] = 1;
      frontier.push_back(i);
    }
  }
  while (!frontier.empty()) {
    const std::size_t i = frontier.back();
    frontier.pop_back();
    for (std::size_t j : graph.neighbors(i)) {
      // Anchors are seeded above; only on-station aerial units extend paths.
      if (reached[j] || graph.is_anchor(j) || !graph.present(state, j)) continue;
      reached[j] = 1;
      frontier.push_back(j);
    }
  }

  NetworkState next = state;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (graph.is_anchor(i) || !graph.present(state, i)) continue;
    auto& slot = nodes[i].kind == NodeKind::FBS ? next.fbs[nodes[i].unit] : next.dbs[nodes[i].unit];
    slot = reached[i] ? UnitStatus::Active : UnitStatus::Inactive;
  }
  return next;
}

std::vector<Disk> serving_disks(const Scenario& scenario, const DeploymentPlan& plan,
                                const NetworkState& state) {
  std::vector<Disk> disks;
  for (const auto& p : scenario.tbs_locations) disks.push_back({p, scenario.tbs_radius});
  for (std::size_t g = 0; g < state.gvbs_arrived.size(); ++g) {
    if (state.gvbs_arrived[g] && g < plan.gvbs_assignment.size() && plan.gvbs_assignment[g]) {
      disks.push_back(
          {scenario.gvbs_reachable_locations.at(*plan.gvbs_assignment[g]), scenario.gvbs_radius});
    }
  }
  for (std::size_t u = 0; u < state.fbs.size(); ++u) {
    if (state.fbs[u] == UnitStatus::Active) disks.push_back({plan.fbs_targets.at(u), scenario.fbs_radius});
  }
  for (std::size_t k = 0; k < state.dbs.size(); ++k) {
    if (state.dbs[k] == UnitStatus::Active) disks.push_back({plan.dbs_targets.at(k), scenario.dbs_radius});
  }
  return disks;
}

namespace {

void require_fits(const Scenario& scenario, const DeploymentPlan& plan) {
  const auto problems = validate(plan, scenario);
  if (problems.empty()) return;
  std::ostringstream os;
  os << "plan does not fit scenario:";
  for (const auto& p : problems) os << "\n  " << p;
  throw std::invalid_argument(os.str());
}

}  // namespace

SimulationResult simulate_detailed(const Scenario& scenario, const DeploymentPlan& plan,
                                   const CoverageGrid& grid, SimulationOptions options) {
  require_fits(scenario, plan);
  if (grid.disaster_radius() != scenario.disaster_radius) {
    throw std::invalid_argument("coverage grid was built for a different disaster radius");
  }

  SimulationResult result;
  const auto timeline = build_timeline(scenario, plan);
  const BackhaulGraph graph(scenario, plan);

  for (std::size_t u = 0; u < plan.fbs_targets.size(); ++u) {
    result.aerial.push_back({NodeKind::FBS, u, std::nullopt, std::nullopt});
  }
  const std::size_t dbs_offset = result.aerial.size();
  for (std::size_t k = 0; k < plan.dbs_targets.size(); ++k) {
    result.aerial.push_back({NodeKind::DBS, k, std::nullopt, std::nullopt});
  }

  CoverageAccumulator coverage(grid);
  for (const auto& p : scenario.tbs_locations) coverage.add({p, scenario.tbs_radius});

  const Disk no_disk{};
  auto disk_of = [&](NodeKind kind, std::size_t unit) -> Disk {
    switch (kind) {
      case NodeKind::GVBS:
        return {scenario.gvbs_reachable_locations[*plan.gvbs_assignment[unit]],
                scenario.gvbs_radius};
      case NodeKind::FBS: return {plan.fbs_targets[unit], scenario.fbs_radius};
      case NodeKind::DBS: return {plan.dbs_targets[unit], scenario.dbs_radius};
      case NodeKind::TBS: break;
    }
    return no_disk;
  };

  NetworkState state = NetworkState::initial(scenario);
  std::vector<TraceSegment> segments;
  double previous = 0.0;

  std::size_t i = 0;
  while (i < timeline.size()) {
    const double now = timeline[i].time;
    if (now > previous) segments.push_back({previous, now, coverage.fraction()});

    std::size_t end = i;
    while (end < timeline.size() && timeline[end].time == now) ++end;

    // Removals sort ahead of arrivals within a batch.
    for (std::size_t e = i; e < end; ++e) {
      const Event& ev = timeline[e];
      switch (ev.kind) {
        case EventKind::FBSReturn:
          if (state.fbs[ev.unit] == UnitStatus::Active) coverage.remove(disk_of(NodeKind::FBS, ev.unit));
          state.fbs[ev.unit] = UnitStatus::Absent;
          break;
        case EventKind::DBSDeath:
          if (state.dbs[ev.unit] == UnitStatus::Active) coverage.remove(disk_of(NodeKind::DBS, ev.unit));
          state.dbs[ev.unit] = UnitStatus::Absent;
          break;
        case EventKind::GVBSArrival:
          state.gvbs_arrived[ev.unit] = true;
          coverage.add(disk_of(NodeKind::GVBS, ev.unit));
          break;
        case EventKind::FBSArrival:
          state.fbs[ev.unit] = UnitStatus::Inactive;
          result.aerial[ev.unit].arrival = now;
          break;
        case EventKind::DBSArrival:
          state.dbs[ev.unit] = UnitStatus::Inactive;
          result.aerial[dbs_offset + ev.unit].arrival = now;
          break;
      }
    }

    NetworkState next = connectivity_fixed_point(state, graph);
    auto sync = [&](NodeKind kind, const std::vector<UnitStatus>& before,
                    const std::vector<UnitStatus>& after, std::size_t offset) {
      for (std::size_t j = 0; j < after.size(); ++j) {
        const bool was = before[j] == UnitStatus::Active;
        const bool is = after[j] == UnitStatus::Active;
        if (is && !was) {
          coverage.add(disk_of(kind, j));
          auto& activity = result.aerial[offset + j];
          if (!activity.first_active) activity.first_active = now;
        } else if (was && !is) {
          coverage.remove(disk_of(kind, j));
        }
      }
    };
    // Units that just arrived were set Inactive above, so promotion shows up
    // as a change here.
    sync(NodeKind::FBS, state.fbs, next.fbs, 0);
    sync(NodeKind::DBS, state.dbs, next.dbs, dbs_offset);
    state = std::move(next);

    if (options.record_log) {
      EventRecord counts;
      counts.arrived_gvbs = state.arrived_gvbs().size();
      counts.active_fbs = state.active_fbs().size();
      counts.inactive_fbs = state.inactive_fbs().size();
      counts.active_dbs = state.active_dbs().size();
      counts.inactive_dbs = state.inactive_dbs().size();
      for (std::size_t e = i; e < end; ++e) {
        counts.event = timeline[e];
        result.log.push_back(counts);
      }
    }
    if (options.record_states) result.states.emplace_back(now, state);

    previous = now;
    i = end;
  }
  segments.push_back({previous, scenario.horizon, coverage.fraction()});
  result.trace = CoverageTrace(std::move(segments));
  return result;
}

CoverageTrace simulate(const Scenario& scenario, const DeploymentPlan& plan,
                       const CoverageGrid& grid) {
  return simulate_detailed(scenario, plan, grid).trace;
}

}  // namespace twc
