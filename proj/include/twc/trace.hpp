#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twc {

struct TraceSegment {
  double t_start = 0.0;
  double t_end = 0.0;
  double fraction = 0.0;

  friend bool operator==(const TraceSegment&, const TraceSegment&) = default;
};

/// Piecewise-constant coverage over [0, horizon]. Each segment holds on the
/// half-open interval (t_start, t_end]; the first one also holds at t = 0.
class CoverageTrace {
 public:
  CoverageTrace() = default;
  explicit CoverageTrace(std::vector<TraceSegment> segments) : segments_(std::move(segments)) {}

  const std::vector<TraceSegment>& segments() const { return segments_; }
  std::vector<TraceSegment>& segments() { return segments_; }
  bool empty() const { return segments_.empty(); }
  double horizon() const { return segments_.empty() ? 0.0 : segments_.back().t_end; }

  /// Coverage at time t, clamped to the traced span.
  double fraction_at(double t) const;

  /// Describes the first structural problem (gap, overlap, zero-length
  /// segment, not starting at 0, fraction outside [0,1]); empty when
  /// well-formed.
  std::string check() const;

  void write_csv(std::ostream& os) const;

  friend bool operator==(const CoverageTrace&, const CoverageTrace&) = default;

 private:
  std::vector<TraceSegment> segments_;
};

}  // namespace twc
