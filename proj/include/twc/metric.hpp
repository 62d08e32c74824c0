#pragma once

#include <vector>

#include "twc/model.hpp"
#include "twc/trace.hpp"

namespace twc {

struct WeightedScore {
  double c_w = 0.0;
  std::vector<double> contributions;  // one per trace segment

  friend bool operator==(const WeightedScore&, const WeightedScore&) = default;
};

/// Integral of w over [a, b]. Throws std::invalid_argument if a > b or a < 0.
double segment_weight_integral(const WeightFunction& w, double a, double b);

/// Sum over segments of fraction times the weight integral on that segment.
/// Throws std::invalid_argument on a malformed trace.
WeightedScore time_weighted_coverage(const CoverageTrace& trace, const WeightFunction& w);

}  // namespace twc
