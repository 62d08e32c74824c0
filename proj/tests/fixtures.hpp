#pragma once

#include "twc/model.hpp"

namespace twc::testing {

/// Reference parameters with no units placed; tests add what they need.
inline Scenario bare_scenario(double horizon = 5.0) {
  Scenario s;
  s.disaster_radius = 20.0;
  s.tbs_radius = 2.0;
  s.gvbs_radius = 3.0;
  s.fbs_radius = 6.0;
  s.dbs_radius = 3.0;
  s.fbs_speed = 50.0;
  s.dbs_speed = 50.0;
  s.fbs_endurance = 2.0;
  s.dbs_operating_time = 5.0;
  s.horizon = horizon;
  auto& bt = s.backhaul_thresholds;
  bt.set(NodeKind::FBS, NodeKind::TBS, 8.0);
  bt.set(NodeKind::FBS, NodeKind::GVBS, 8.0);
  bt.set(NodeKind::FBS, NodeKind::FBS, 10.0);
  bt.set_symmetric(NodeKind::FBS, NodeKind::DBS, 8.0);
  bt.set(NodeKind::DBS, NodeKind::TBS, 5.0);
  bt.set(NodeKind::DBS, NodeKind::GVBS, 5.0);
  bt.set(NodeKind::DBS, NodeKind::DBS, 5.0);
  return s;
}

}  // namespace twc::testing
