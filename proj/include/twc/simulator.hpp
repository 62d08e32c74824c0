#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "twc/geometry.hpp"
#include "twc/model.hpp"
#include "twc/trace.hpp"

namespace twc {

// Declaration order is the tie order for simultaneous events: removals first,
// then GVBS, FBS, DBS.
enum class EventKind { FBSReturn, DBSDeath, GVBSArrival, FBSArrival, DBSArrival };

const char* to_string(EventKind kind);

struct Event {
  double time = 0.0;
  EventKind kind = EventKind::GVBSArrival;
  std::size_t unit = 0;

  bool is_removal() const { return kind == EventKind::FBSReturn || kind == EventKind::DBSDeath; }

  friend bool operator==(const Event&, const Event&) = default;
};

/// Arrival/return/death instants strictly before the horizon, ordered by time
/// and then by the EventKind/unit tie order. Units with an empty service
/// window produce no events.
std::vector<Event> build_timeline(const Scenario& scenario, const DeploymentPlan& plan);

enum class UnitStatus { Absent, Active, Inactive };

/// Which units are on station at a given instant. A FBS/DBS on station is
/// either Active (serving, backhaul available) or Inactive (waiting for
/// backhaul).
struct NetworkState {
  std::vector<bool> gvbs_arrived;
  std::vector<UnitStatus> fbs;
  std::vector<UnitStatus> dbs;

  static NetworkState initial(const Scenario& scenario);

  std::vector<std::size_t> arrived_gvbs() const;
  std::vector<std::size_t> active_fbs() const;
  std::vector<std::size_t> inactive_fbs() const;
  std::vector<std::size_t> active_dbs() const;
  std::vector<std::size_t> inactive_dbs() const;

  friend bool operator==(const NetworkState&, const NetworkState&) = default;
};

/// Threshold graph over every unit the plan can bring on station: all TBSs,
/// assigned GVBSs and all deployed FBS/DBS. A NetworkState selects which of
/// these nodes are present at an instant. Edges join pairs with at least one
/// aerial end whose distance is within that pair's backhaul threshold.
class BackhaulGraph {
 public:
  struct Node {
    NodeKind kind;
    std::size_t unit;
    Point location;
  };

  BackhaulGraph(const Scenario& scenario, const DeploymentPlan& plan);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<std::size_t>& neighbors(std::size_t node) const { return adjacency_[node]; }
  bool connected(std::size_t a, std::size_t b) const;

  std::optional<std::size_t> node_of(NodeKind kind, std::size_t unit) const;

  /// Whether the node is present in the state (TBSs always are).
  bool present(const NetworkState& state, std::size_t node) const;
  bool is_anchor(std::size_t node) const {
    return nodes_[node].kind == NodeKind::TBS || nodes_[node].kind == NodeKind::GVBS;
  }

 private:
  std::vector<Node> nodes_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::optional<std::size_t>> gvbs_node_;
  std::size_t fbs_base_ = 0;
  std::size_t dbs_base_ = 0;
  bool has_fbs_ = false;
  bool has_dbs_ = false;
};

/// Re-partitions every on-station FBS/DBS: Active exactly when a backhaul path
/// through present anchors and on-station aerial units reaches an anchor,
/// Inactive otherwise. Absent units and GVBSs are untouched.
NetworkState connectivity_fixed_point(const NetworkState& state, const BackhaulGraph& graph);

struct EventRecord {
  Event event;
  std::size_t arrived_gvbs = 0;
  std::size_t active_fbs = 0;
  std::size_t inactive_fbs = 0;
  std::size_t active_dbs = 0;
  std::size_t inactive_dbs = 0;
};

/// Arrival versus first-service instant of one aerial unit.
struct AerialActivity {
  NodeKind kind = NodeKind::FBS;
  std::size_t unit = 0;
  std::optional<double> arrival;
  std::optional<double> first_active;
};

struct SimulationResult {
  CoverageTrace trace;
  std::vector<EventRecord> log;
  std::vector<AerialActivity> aerial;
  // State after each distinct event instant, paired with that instant.
  std::vector<std::pair<double, NetworkState>> states;
};

struct SimulationOptions {
  bool record_log = false;
  bool record_states = false;
};

/// Replays the plan's event timeline and returns the coverage trace.
/// Throws std::invalid_argument when the plan does not fit the scenario.
CoverageTrace simulate(const Scenario& scenario, const DeploymentPlan& plan,
                       const CoverageGrid& grid);

SimulationResult simulate_detailed(const Scenario& scenario, const DeploymentPlan& plan,
                                   const CoverageGrid& grid, SimulationOptions options = {});

/// Disks of every node serving under `state`: all TBSs, arrived GVBSs and
/// active FBS/DBS.
std::vector<Disk> serving_disks(const Scenario& scenario, const DeploymentPlan& plan,
                                const NetworkState& state);

}  // namespace twc
