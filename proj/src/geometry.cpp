#include "twc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace twc {

CoverageGrid::CoverageGrid(double disaster_radius, double cell_size)
    : disaster_radius_(disaster_radius), cell_size_(cell_size) {
  if (!(disaster_radius > 0.0)) throw std::invalid_argument("disaster radius must be positive");
  if (!(cell_size > 0.0)) throw std::invalid_argument("cell size must be positive");

  const double half = disaster_radius + cell_size;
  origin_ = {-half, -half};
  side_ = static_cast<std::size_t>(std::ceil(2.0 * half / cell_size));
  centers_.resize(side_);
  for (std::size_t i = 0; i < side_; ++i) {
    centers_[i] = origin_.x + (static_cast<double>(i) + 0.5) * cell_size;
  }

  const double r2 = disaster_radius * disaster_radius;
  row_begin_.assign(side_, 0);
  row_end_.assign(side_, 0);
  for (std::size_t row = 0; row < side_; ++row) {
    const double y = centers_[row];
    std::size_t first = side_;
    std::size_t last = 0;
    for (std::size_t col = 0; col < side_; ++col) {
      const double x = centers_[col];
      if (x * x + y * y <= r2) {
        first = std::min(first, col);
        last = col + 1;
      }
    }
    if (first < last) {
      row_begin_[row] = first;
      row_end_[row] = last;
      in_disaster_count_ += last - first;
    }
  }
  if (in_disaster_count_ == 0) throw std::invalid_argument("grid has no cells in the disaster disk");
}

CoverageGrid::Span CoverageGrid::axis_span(double c, double radius) const {
  const double lo = std::floor((c - radius - origin_.x) / cell_size_ - 0.5) - 1.0;
  const double hi = std::ceil((c + radius - origin_.x) / cell_size_ - 0.5) + 2.0;
  const double n = static_cast<double>(side_);
  Span s;
  s.lo = static_cast<std::size_t>(std::clamp(lo, 0.0, n));
  s.hi = static_cast<std::size_t>(std::clamp(hi, 0.0, n));
  return s;
}

std::size_t covered_cells_reference(const CoverageGrid& grid, std::span<const Disk> disks) {
  std::size_t count = 0;
  for (std::size_t row = 0; row < grid.side(); ++row) {
    for (std::size_t col = 0; col < grid.side(); ++col) {
      if (!grid.in_disaster(row, col)) continue;
      const double x = grid.center_x(col);
      const double y = grid.center_y(row);
      for (const auto& d : disks) {
        if (covers(d, x, y)) {
          ++count;
          break;
        }
      }
    }
  }
  return count;
}

std::size_t covered_cells(const CoverageGrid& grid, std::span<const Disk> disks) {
  if (disks.empty()) return 0;
  const auto side = static_cast<long>(grid.side());
  std::size_t count = 0;

#pragma omp parallel
  {
    std::vector<const Disk*> row_disks;
    row_disks.reserve(disks.size());
#pragma omp for reduction(+ : count) schedule(static)
    for (long r = 0; r < side; ++r) {
      const auto row = static_cast<std::size_t>(r);
      const double y = grid.center_y(row);
      row_disks.clear();
      for (const auto& d : disks) {
        const double dy = y - d.center.y;
        if (dy * dy <= d.radius * d.radius) row_disks.push_back(&d);
      }
      if (row_disks.empty()) continue;
      for (std::size_t col = grid.row_begin(row); col < grid.row_end(row); ++col) {
        const double x = grid.center_x(col);
        for (const Disk* d : row_disks) {
          if (covers(*d, x, y)) {
            ++count;
            break;
          }
        }
      }
    }
  }
  return count;
}

double coverage_fraction(const CoverageGrid& grid, std::span<const Disk> disks) {
  return static_cast<double>(covered_cells(grid, disks)) /
         static_cast<double>(grid.in_disaster_count());
}

double coverage_fraction_reference(const CoverageGrid& grid, std::span<const Disk> disks) {
  return static_cast<double>(covered_cells_reference(grid, disks)) /
         static_cast<double>(grid.in_disaster_count());
}

double union_area(std::span<const Disk> disks, const Disk& clip, double cell_size) {
  const CoverageGrid grid(clip.radius, cell_size);
  std::vector<Disk> shifted(disks.begin(), disks.end());
  for (auto& d : shifted) {
    d.center.x -= clip.center.x;
    d.center.y -= clip.center.y;
  }
  return coverage_fraction(grid, shifted) * std::numbers::pi * clip.radius * clip.radius;
}

CoverageAccumulator::CoverageAccumulator(const CoverageGrid& grid)
    : grid_(&grid), counts_(grid.cell_count(), 0) {}

template <int Delta>
void CoverageAccumulator::apply(const Disk& disk) {
  const auto rows = grid_->axis_span(disk.center.y, disk.radius);
  const auto cols = grid_->axis_span(disk.center.x, disk.radius);
  const std::size_t side = grid_->side();
  for (std::size_t row = rows.lo; row < rows.hi; ++row) {
    const std::size_t lo = std::max(cols.lo, grid_->row_begin(row));
    const std::size_t hi = std::min(cols.hi, grid_->row_end(row));
    const double y = grid_->center_y(row);
    std::uint16_t* line = counts_.data() + row * side;
    for (std::size_t col = lo; col < hi; ++col) {
      if (!covers(disk, grid_->center_x(col), y)) continue;
      if constexpr (Delta > 0) {
        if (line[col]++ == 0) ++covered_;
      } else {
        if (--line[col] == 0) --covered_;
      }
    }
  }
}

void CoverageAccumulator::add(const Disk& disk) { apply<+1>(disk); }
void CoverageAccumulator::remove(const Disk& disk) { apply<-1>(disk); }

void CoverageAccumulator::clear() {
  std::fill(counts_.begin(), counts_.end(), 0);
  covered_ = 0;
}

}  // namespace twc
