#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "twc/model.hpp"

namespace twc {

/// Square lattice of cell centers over [-R-h, R+h]^2, with the subset of cells
/// whose centers lie in the disaster disk marked. Coverage is measured as the
/// share of marked cells whose center falls in at least one disk.
class CoverageGrid {
 public:
  /// Default lattice pitch in km.
  static constexpr double kDefaultCellSize = 0.1;

  CoverageGrid(double disaster_radius, double cell_size = kDefaultCellSize);

  double cell_size() const { return cell_size_; }
  double disaster_radius() const { return disaster_radius_; }
  Point origin() const { return origin_; }
  std::size_t side() const { return side_; }
  std::size_t cell_count() const { return side_ * side_; }
  std::size_t in_disaster_count() const { return in_disaster_count_; }

  double center_x(std::size_t col) const { return centers_[col]; }
  double center_y(std::size_t row) const { return centers_[row]; }

  // Marked cells of a row form one contiguous run [row_begin, row_end).
  std::size_t row_begin(std::size_t row) const { return row_begin_[row]; }
  std::size_t row_end(std::size_t row) const { return row_end_[row]; }

  bool in_disaster(std::size_t row, std::size_t col) const {
    return col >= row_begin_[row] && col < row_end_[row];
  }

  struct Span {
    std::size_t lo = 0;
    std::size_t hi = 0;  // exclusive
  };
  /// Conservative index range whose cell centers can be within `radius` of
  /// `c` along one axis.
  Span axis_span(double c, double radius) const;

 private:
  double disaster_radius_;
  double cell_size_;
  Point origin_;
  std::size_t side_ = 0;
  std::vector<double> centers_;
  std::vector<std::size_t> row_begin_;
  std::vector<std::size_t> row_end_;
  std::size_t in_disaster_count_ = 0;
};

/// Cell-center membership test shared by every kernel; boundary counts as
/// covered.
inline bool covers(const Disk& d, double x, double y) {
  const double dx = x - d.center.x;
  const double dy = y - d.center.y;
  return dx * dx + dy * dy <= d.radius * d.radius;
}

/// Number of marked cells covered by at least one disk (OpenMP over rows).
std::size_t covered_cells(const CoverageGrid& grid, std::span<const Disk> disks);

/// Straightforward serial version of covered_cells: every marked cell against
/// every disk. Kept as the reference the parallel kernels are checked
/// against.
std::size_t covered_cells_reference(const CoverageGrid& grid, std::span<const Disk> disks);

/// Share of the disaster disk covered by the union of `disks`, in [0, 1].
double coverage_fraction(const CoverageGrid& grid, std::span<const Disk> disks);
double coverage_fraction_reference(const CoverageGrid& grid, std::span<const Disk> disks);

/// Union area in km^2 clipped to `clip`, measured on a lattice of the given
/// pitch centered on the clip disk.
double union_area(std::span<const Disk> disks, const Disk& clip,
                  double cell_size = CoverageGrid::kDefaultCellSize);

/// Per-cell multiplicity counts for a disk set that changes one disk at a
/// time. Adding or removing a disk touches only its bounding box, and the
/// covered-cell count stays identical to covered_cells() on the same set.
class CoverageAccumulator {
 public:
  explicit CoverageAccumulator(const CoverageGrid& grid);

  void add(const Disk& disk);
  /// The disk must currently be present.
  void remove(const Disk& disk);
  void clear();

  std::size_t covered() const { return covered_; }
  double fraction() const {
    return static_cast<double>(covered_) / static_cast<double>(grid_->in_disaster_count());
  }

 private:
  template <int Delta>
  void apply(const Disk& disk);

  const CoverageGrid* grid_;
  std::vector<std::uint16_t> counts_;
  std::size_t covered_ = 0;
};

}  // namespace twc
