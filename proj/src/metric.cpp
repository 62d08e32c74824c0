#include "twc/metric.hpp"

#include <stdexcept>
#include <string>

namespace twc {

double segment_weight_integral(const WeightFunction& w, double a, double b) {
  if (!(a >= 0.0)) throw std::invalid_argument("segment start must be non-negative");
  if (a > b) throw std::invalid_argument("segment start exceeds segment end");
  return w.integral(a, b);
}

WeightedScore time_weighted_coverage(const CoverageTrace& trace, const WeightFunction& w) {
  if (const auto problem = trace.check(); !problem.empty()) {
    throw std::invalid_argument("malformed coverage trace: " + problem);
  }
  WeightedScore score;
  score.contributions.reserve(trace.segments().size());
  for (const auto& s : trace.segments()) {
    const double part = s.fraction * segment_weight_integral(w, s.t_start, s.t_end);
    score.contributions.push_back(part);
    score.c_w += part;
  }
  return score;
}

}  // namespace twc
