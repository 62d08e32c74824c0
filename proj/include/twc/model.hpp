#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace twc {

// Kilometers east/north of the disaster center.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b);

struct Disk {
  Point center;
  double radius = 0.0;

  friend bool operator==(const Disk&, const Disk&) = default;
};

enum class NodeKind { TBS = 0, GVBS = 1, FBS = 2, DBS = 3 };
inline constexpr std::size_t kNodeKinds = 4;

const char* to_string(NodeKind kind);
std::optional<NodeKind> node_kind_from_string(const std::string& name);

/// Weighting applied to the coverage trace over time: w(t) = 1 or
/// w(t) = exp(-alpha t). An exponential with alpha == 0 behaves exactly like
/// the constant weight.
class WeightFunction {
 public:
  enum class Family { Constant, Exponential };

  static WeightFunction constant() { return WeightFunction(Family::Constant, 0.0); }
  static WeightFunction exponential(double alpha) {
    return WeightFunction(Family::Exponential, alpha);
  }

  Family family() const { return family_; }
  double alpha() const { return alpha_; }

  double operator()(double t) const;

  /// Integral of w over [a, b], in closed form.
  double integral(double a, double b) const;

  friend bool operator==(const WeightFunction&, const WeightFunction&) = default;

 private:
  WeightFunction(Family family, double alpha) : family_(family), alpha_(alpha) {}

  Family family_;
  double alpha_;
};

/// Backhaul hop limits in km, indexed [from][to]. Only rows for aerial units
/// (FBS, DBS) are meaningful; anchors never need a backhaul hop among
/// themselves. A value <= 0 means "not configured".
struct BackhaulTable {
  std::array<std::array<double, kNodeKinds>, kNodeKinds> km{};

  double get(NodeKind a, NodeKind b) const {
    return km[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  void set(NodeKind a, NodeKind b, double value) {
    km[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = value;
  }
  void set_symmetric(NodeKind a, NodeKind b, double value) {
    set(a, b, value);
    set(b, a, value);
  }

  /// Threshold for a hop between two nodes where at least one is aerial.
  /// Uses the aerial side's row, so an anchor-aerial lookup works either way.
  double threshold(NodeKind a, NodeKind b) const;

  friend bool operator==(const BackhaulTable&, const BackhaulTable&) = default;
};

struct Scenario {
  double disaster_radius = 0.0;

  std::vector<Point> tbs_locations;
  double tbs_radius = 0.0;

  int gvbs_count = 0;
  std::vector<Point> gvbs_reachable_locations;
  // gvbs_count rows by gvbs_reachable_locations.size() columns, hours.
  std::vector<std::vector<double>> gvbs_travel_time;
  double gvbs_radius = 0.0;

  std::vector<Point> fbs_initial;
  double fbs_speed = 0.0;
  double fbs_endurance = 0.0;
  double fbs_radius = 0.0;

  std::vector<Point> dbs_initial;
  double dbs_speed = 0.0;
  double dbs_operating_time = 0.0;
  double dbs_radius = 0.0;

  BackhaulTable backhaul_thresholds;
  double horizon = 0.0;
  WeightFunction weight = WeightFunction::constant();

  std::size_t fbs_count() const { return fbs_initial.size(); }
  std::size_t dbs_count() const { return dbs_initial.size(); }
  std::size_t location_count() const { return gvbs_reachable_locations.size(); }
  double radius_of(NodeKind kind) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// The decision variables: where each GVBS goes, and where/when each aerial
/// unit is sent. Each list is either sized to its fleet or empty; an empty
/// list means that fleet is held back entirely.
struct DeploymentPlan {
  // gvbs_assignment[g] is the reachable-location index, or nullopt.
  std::vector<std::optional<std::size_t>> gvbs_assignment;
  std::vector<Point> fbs_targets;
  std::vector<double> fbs_dispatch;
  std::vector<Point> dbs_targets;
  std::vector<double> dbs_dispatch;

  bool deploys_fbs() const { return !fbs_targets.empty(); }
  bool deploys_dbs() const { return !dbs_targets.empty(); }

  friend bool operator==(const DeploymentPlan&, const DeploymentPlan&) = default;
};

struct ServiceWindow {
  double arrive = 0.0;
  double depart = 0.0;
  NodeKind unit_kind = NodeKind::FBS;
  Point location;
  double radius = 0.0;

  bool empty() const { return !(arrive < depart); }
  double length() const { return depart - arrive; }
};

/// Transit time at constant speed.
double travel_hours(const Point& from, const Point& to, double speed);

ServiceWindow fbs_window(const Scenario& scenario, const DeploymentPlan& plan, std::size_t u);
ServiceWindow dbs_window(const Scenario& scenario, const DeploymentPlan& plan, std::size_t k);
std::optional<ServiceWindow> gvbs_window(const Scenario& scenario, const DeploymentPlan& plan,
                                         std::size_t g);

/// Every scenario invariant that does not hold, as human-readable messages
/// prefixed with the offending field. Empty means valid.
std::vector<std::string> validate(const Scenario& scenario);

/// Plan shape and bound checks against a scenario.
std::vector<std::string> validate(const DeploymentPlan& plan, const Scenario& scenario);

}  // namespace twc
