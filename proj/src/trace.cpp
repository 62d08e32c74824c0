#include "twc/trace.hpp"

#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace twc {

double CoverageTrace::fraction_at(double t) const {
  if (segments_.empty()) return 0.0;
  for (const auto& s : segments_) {
    if (t <= s.t_end) return s.fraction;
  }
  return segments_.back().fraction;
}

std::string CoverageTrace::check() const {
  if (segments_.empty()) return "trace has no segments";
  std::ostringstream os;
  if (segments_.front().t_start != 0.0) {
    os << "trace starts at " << segments_.front().t_start << ", not 0";
    return os.str();
  }
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (!(s.t_start < s.t_end)) {
      os << "segment " << i << " has t_start " << s.t_start << " >= t_end " << s.t_end;
      return os.str();
    }
    if (!(s.fraction >= 0.0 && s.fraction <= 1.0)) {
      os << "segment " << i << " fraction " << s.fraction << " outside [0, 1]";
      return os.str();
    }
    if (i > 0 && segments_[i - 1].t_end != s.t_start) {
      os << (segments_[i - 1].t_end < s.t_start ? "gap" : "overlap") << " between segments "
         << i - 1 << " and " << i;
      return os.str();
    }
  }
  return {};
}

void CoverageTrace::write_csv(std::ostream& os) const {
  const auto old_precision = os.precision(std::numeric_limits<double>::max_digits10);
  os << "t_start,t_end,fraction\n";
  for (const auto& s : segments_) os << s.t_start << ',' << s.t_end << ',' << s.fraction << '\n';
  os.precision(old_precision);
}

}  // namespace twc
