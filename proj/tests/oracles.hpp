#pragma once

// Independent reference computations used only by the test suites.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "twc/geometry.hpp"
#include "twc/model.hpp"
#include "twc/simulator.hpp"

namespace twc::oracle {

/// Share of uniform samples over the disaster disk that land in some disk.
inline double monte_carlo_fraction(const std::vector<Disk>& disks, double disaster_radius,
                                   std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double r = disaster_radius * std::sqrt(unit(rng));
    const double a = 2.0 * std::numbers::pi * unit(rng);
    const double x = r * std::cos(a);
    const double y = r * std::sin(a);
    for (const auto& d : disks) {
      if (std::hypot(x - d.center.x, y - d.center.y) <= d.radius) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

/// Intersection area of two disks with radii r1, r2 and center distance d.
inline double lens_area(double r1, double r2, double d) {
  if (d >= r1 + r2) return 0.0;
  if (d <= std::abs(r1 - r2)) {
    const double r = std::min(r1, r2);
    return std::numbers::pi * r * r;
  }
  const double a1 = std::acos((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1));
  const double a2 = std::acos((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2));
  const double k = std::sqrt((-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2));
  return r1 * r1 * a1 + r2 * r2 * a2 - 0.5 * k;
}

inline double two_disk_union_area(const Disk& a, const Disk& b) {
  return std::numbers::pi * (a.radius * a.radius + b.radius * b.radius) -
         lens_area(a.radius, b.radius, distance(a.center, b.center));
}

namespace detail {

inline std::vector<std::size_t> on_station_aerial(const NetworkState& state,
                                                  const BackhaulGraph& graph) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < graph.nodes().size(); ++i) {
    if (!graph.is_anchor(i) && graph.present(state, i)) out.push_back(i);
  }
  return out;
}

inline NetworkState with_active(const NetworkState& state, const BackhaulGraph& graph,
                                const std::vector<std::size_t>& aerial,
                                const std::vector<bool>& active) {
  NetworkState next = state;
  for (std::size_t j = 0; j < aerial.size(); ++j) {
    const auto& n = graph.nodes()[aerial[j]];
    auto& slot = n.kind == NodeKind::FBS ? next.fbs[n.unit] : next.dbs[n.unit];
    slot = active[j] ? UnitStatus::Active : UnitStatus::Inactive;
  }
  return next;
}

// Nodes that reach a present anchor using only present anchors and the
// aerial units flagged in `relays`, by plain relaxation rather than a
// queue-based search.
inline std::vector<bool> reachable(const NetworkState& state, const BackhaulGraph& graph,
                                   const std::vector<std::size_t>& aerial,
                                   const std::vector<bool>& relays) {
  const std::size_t n = graph.nodes().size();
  std::vector<bool> reach(n, false);
  for (std::size_t i = 0; i < n; ++i) reach[i] = graph.is_anchor(i) && graph.present(state, i);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j < aerial.size(); ++j) {
      if (!relays[j] || reach[aerial[j]]) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (reach[b] && graph.connected(aerial[j], b)) {
          reach[aerial[j]] = true;
          changed = true;
          break;
        }
      }
    }
  }
  return reach;
}

inline bool anchored(const NetworkState& state, const BackhaulGraph& graph,
                     const std::vector<std::size_t>& aerial, const std::vector<bool>& subset) {
  const auto reach = reachable(state, graph, aerial, subset);
  for (std::size_t j = 0; j < aerial.size(); ++j) {
    if (subset[j] && !reach[aerial[j]]) return false;
  }
  return true;
}

}  // namespace detail

/// Largest subset of on-station aerial units in which every member has an
/// anchored path through members, by enumerating all subsets.
inline NetworkState brute_force_fixed_point(const NetworkState& state, const BackhaulGraph& graph) {
  const auto aerial = detail::on_station_aerial(state, graph);
  const std::size_t count = aerial.size();
  std::vector<bool> best(count, false);
  std::size_t best_size = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << count); ++mask) {
    std::vector<bool> subset(count);
    std::size_t size = 0;
    for (std::size_t j = 0; j < count; ++j) {
      subset[j] = (mask >> j) & 1U;
      size += subset[j];
    }
    if (mask != 0 && size <= best_size) continue;
    if (detail::anchored(state, graph, aerial, subset)) {
      best = subset;
      best_size = size;
    }
  }
  return detail::with_active(state, graph, aerial, best);
}

/// Literal activation/deactivation sweeps: repeatedly promote any inactive
/// unit adjacent to an anchor or an active unit, then repeatedly demote any
/// active unit that can no longer reach an anchor through active units.
inline NetworkState sweep_fixed_point(const NetworkState& state, const BackhaulGraph& graph) {
  const auto aerial = detail::on_station_aerial(state, graph);
  const std::size_t count = aerial.size();
  const std::size_t n = graph.nodes().size();
  std::vector<bool> active(count);
  for (std::size_t j = 0; j < count; ++j) {
    const auto& node = graph.nodes()[aerial[j]];
    const auto status = node.kind == NodeKind::FBS ? state.fbs[node.unit] : state.dbs[node.unit];
    active[j] = status == UnitStatus::Active;
  }
  auto serving = [&](std::size_t node) {
    if (graph.is_anchor(node)) return graph.present(state, node);
    for (std::size_t j = 0; j < count; ++j) {
      if (aerial[j] == node) return static_cast<bool>(active[j]);
    }
    return false;
  };

  bool activated = true;
  while (activated) {
    activated = false;
    for (std::size_t j = 0; j < count; ++j) {
      if (active[j]) continue;
      for (std::size_t other = 0; other < n; ++other) {
        if (serving(other) && graph.connected(aerial[j], other)) {
          active[j] = true;
          activated = true;
          break;
        }
      }
    }
  }

  bool deactivated = true;
  while (deactivated) {
    deactivated = false;
    for (std::size_t j = 0; j < count; ++j) {
      if (!active[j]) continue;
      if (!detail::reachable(state, graph, aerial, active)[aerial[j]]) {
        active[j] = false;
        deactivated = true;
      }
    }
  }
  return detail::with_active(state, graph, aerial, active);
}

}  // namespace twc::oracle
