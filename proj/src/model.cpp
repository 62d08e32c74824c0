#include "twc/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace twc {

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::TBS: return "TBS";
    case NodeKind::GVBS: return "GVBS";
    case NodeKind::FBS: return "FBS";
    case NodeKind::DBS: return "DBS";
  }
  return "?";
}

std::optional<NodeKind> node_kind_from_string(const std::string& name) {
  for (auto kind : {NodeKind::TBS, NodeKind::GVBS, NodeKind::FBS, NodeKind::DBS}) {
    if (name == to_string(kind)) return kind;
  }
  return std::nullopt;
}

double WeightFunction::operator()(double t) const {
  if (family_ == Family::Constant) return 1.0;
  return std::exp(-alpha_ * t);
}

double WeightFunction::integral(double a, double b) const {
  if (family_ == Family::Constant || alpha_ == 0.0) return b - a;
  // e^{-aα}(1 - e^{-α(b-a)})/α, written with expm1 so tiny α stays accurate.
  return std::exp(-alpha_ * a) * -std::expm1(-alpha_ * (b - a)) / alpha_;
}

namespace {

bool is_aerial(NodeKind kind) { return kind == NodeKind::FBS || kind == NodeKind::DBS; }

}  // namespace

double BackhaulTable::threshold(NodeKind a, NodeKind b) const {
  if (is_aerial(a)) return get(a, b);
  return get(b, a);
}

double Scenario::radius_of(NodeKind kind) const {
  switch (kind) {
    case NodeKind::TBS: return tbs_radius;
    case NodeKind::GVBS: return gvbs_radius;
    case NodeKind::FBS: return fbs_radius;
    case NodeKind::DBS: return dbs_radius;
  }
  return 0.0;
}

double travel_hours(const Point& from, const Point& to, double speed) {
  return distance(from, to) / speed;
}

ServiceWindow fbs_window(const Scenario& scenario, const DeploymentPlan& plan, std::size_t u) {
  const Point target = plan.fbs_targets.at(u);
  const double dispatch = plan.fbs_dispatch.at(u);
  const double transit = travel_hours(scenario.fbs_initial.at(u), target, scenario.fbs_speed);
  ServiceWindow w;
  w.unit_kind = NodeKind::FBS;
  w.location = target;
  w.radius = scenario.fbs_radius;
  w.arrive = dispatch + transit;
  // The carrier keeps enough energy to fly home.
  if (scenario.fbs_endurance - 2.0 * transit <= 0.0) {
    w.depart = w.arrive;
  } else {
    w.depart = dispatch + scenario.fbs_endurance - transit;
  }
  return w;
}

ServiceWindow dbs_window(const Scenario& scenario, const DeploymentPlan& plan, std::size_t k) {
  const Point target = plan.dbs_targets.at(k);
  ServiceWindow w;
  w.unit_kind = NodeKind::DBS;
  w.location = target;
  w.radius = scenario.dbs_radius;
  w.arrive = plan.dbs_dispatch.at(k) +
             travel_hours(scenario.dbs_initial.at(k), target, scenario.dbs_speed);
  w.depart = w.arrive + scenario.dbs_operating_time;
  return w;
}

std::optional<ServiceWindow> gvbs_window(const Scenario& scenario, const DeploymentPlan& plan,
                                         std::size_t g) {
  if (g >= plan.gvbs_assignment.size() || !plan.gvbs_assignment[g]) return std::nullopt;
  const std::size_t n = *plan.gvbs_assignment[g];
  ServiceWindow w;
  w.unit_kind = NodeKind::GVBS;
  w.location = scenario.gvbs_reachable_locations.at(n);
  w.radius = scenario.gvbs_radius;
  w.arrive = std::min(scenario.gvbs_travel_time.at(g).at(n), scenario.horizon);
  w.depart = scenario.horizon;
  return w;
}

namespace {

class Violations {
 public:
  template <typename... Parts>
  void add(const Parts&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    items_.push_back(os.str());
  }
  void positive(const char* field, double value) {
    if (!(std::isfinite(value) && value > 0.0)) add(field, ": must be positive (got ", value, ")");
  }
  void finite_points(const char* field, const std::vector<Point>& points) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y)) {
        add(field, "[", i, "]: coordinates must be finite");
      }
    }
  }
  std::vector<std::string> take() { return std::move(items_); }

 private:
  std::vector<std::string> items_;
};

}  // namespace

std::vector<std::string> validate(const Scenario& s) {
  Violations v;
  v.positive("disaster_radius", s.disaster_radius);
  v.positive("tbs_radius", s.tbs_radius);
  v.positive("gvbs_radius", s.gvbs_radius);
  v.positive("fbs_radius", s.fbs_radius);
  v.positive("dbs_radius", s.dbs_radius);
  v.positive("fbs_speed", s.fbs_speed);
  v.positive("dbs_speed", s.dbs_speed);
  v.positive("fbs_endurance", s.fbs_endurance);
  v.positive("dbs_operating_time", s.dbs_operating_time);
  v.positive("horizon", s.horizon);

  v.finite_points("tbs_locations", s.tbs_locations);
  v.finite_points("gvbs_reachable_locations", s.gvbs_reachable_locations);
  v.finite_points("fbs_initial", s.fbs_initial);
  v.finite_points("dbs_initial", s.dbs_initial);

  if (s.gvbs_count < 0) v.add("gvbs_count: must be non-negative (got ", s.gvbs_count, ")");
  if (s.gvbs_count >= 0 && s.gvbs_travel_time.size() != static_cast<std::size_t>(s.gvbs_count)) {
    v.add("gvbs_travel_time: expected ", s.gvbs_count, " rows, got ", s.gvbs_travel_time.size());
  }
  for (std::size_t g = 0; g < s.gvbs_travel_time.size(); ++g) {
    const auto& row = s.gvbs_travel_time[g];
    if (row.size() != s.location_count()) {
      v.add("gvbs_travel_time[", g, "]: expected ", s.location_count(), " columns, got ",
            row.size());
    }
    for (std::size_t n = 0; n < row.size(); ++n) {
      if (!(std::isfinite(row[n]) && row[n] >= 0.0)) {
        v.add("gvbs_travel_time[", g, "][", n, "]: must be non-negative (got ", row[n], ")");
      }
    }
  }

  const auto& bt = s.backhaul_thresholds;
  for (auto aerial : {NodeKind::FBS, NodeKind::DBS}) {
    for (auto other : {NodeKind::TBS, NodeKind::GVBS, NodeKind::FBS, NodeKind::DBS}) {
      const double km = bt.get(aerial, other);
      if (!(std::isfinite(km) && km > 0.0)) {
        v.add("backhaul_thresholds.", to_string(aerial), ".", to_string(other),
              ": must be positive (got ", km, ")");
      }
    }
  }
  if (bt.get(NodeKind::FBS, NodeKind::DBS) != bt.get(NodeKind::DBS, NodeKind::FBS)) {
    v.add("backhaul_thresholds: FBS-DBS (", bt.get(NodeKind::FBS, NodeKind::DBS),
          ") and DBS-FBS (", bt.get(NodeKind::DBS, NodeKind::FBS), ") must be equal");
  }

  if (s.weight.family() == WeightFunction::Family::Exponential &&
      !(std::isfinite(s.weight.alpha()) && s.weight.alpha() >= 0.0)) {
    v.add("weight.alpha: must be non-negative (got ", s.weight.alpha(), ")");
  }
  return v.take();
}

std::vector<std::string> validate(const DeploymentPlan& plan, const Scenario& s) {
  Violations v;
  const auto G = static_cast<std::size_t>(std::max(s.gvbs_count, 0));
  if (!plan.gvbs_assignment.empty() && plan.gvbs_assignment.size() != G) {
    v.add("gvbs_assignment: expected ", G, " entries, got ", plan.gvbs_assignment.size());
  }
  std::set<std::size_t> used;
  for (std::size_t g = 0; g < plan.gvbs_assignment.size(); ++g) {
    const auto& n = plan.gvbs_assignment[g];
    if (!n) continue;
    if (*n >= s.location_count()) {
      v.add("gvbs_assignment[", g, "]: location ", *n, " out of range");
    } else if (!used.insert(*n).second) {
      v.add("gvbs_assignment[", g, "]: location ", *n, " already taken");
    }
  }

  const double R = s.disaster_radius;
  auto check_fleet = [&](const char* name, const std::vector<Point>& targets,
                         const std::vector<double>& dispatch, std::size_t fleet) {
    if (targets.size() != dispatch.size()) {
      v.add(name, "_targets/", name, "_dispatch: lengths differ (", targets.size(), " vs ",
            dispatch.size(), ")");
      return;
    }
    if (!targets.empty() && targets.size() != fleet) {
      v.add(name, "_targets: expected ", fleet, " entries, got ", targets.size());
      return;
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const auto& p = targets[i];
      if (!(std::abs(p.x) <= R && std::abs(p.y) <= R)) {
        v.add(name, "_targets[", i, "]: (", p.x, ", ", p.y, ") outside [-R, R]^2");
      }
      if (!(dispatch[i] >= 0.0 && dispatch[i] < s.horizon)) {
        v.add(name, "_dispatch[", i, "]: ", dispatch[i], " outside [0, horizon)");
      }
    }
  };
  check_fleet("fbs", plan.fbs_targets, plan.fbs_dispatch, s.fbs_count());
  check_fleet("dbs", plan.dbs_targets, plan.dbs_dispatch, s.dbs_count());
  return v.take();
}

}  // namespace twc
