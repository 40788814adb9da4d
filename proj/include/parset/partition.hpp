#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "parset/errors.hpp"
#include "parset/geom.hpp"

namespace parset {

// Uniform partition of an axis-aligned box into m^d congruent cells.
// A dyadic level-L partition of a window is the special case m = 2^L.
// half_offset shifts every cut plane by half a cell edge; the outermost
// (clipped) slots still collect mass so the partition stays exhaustive
// over the box. Points outside the box map to the dedicated slot
// kOutside; measure code adds its own exoskeleton bucket on top.
class CellPartition {
 public:
  static constexpr int64_t kOutside = -1;

  CellPartition() = default;
  CellPartition(const Box& box, int dim, std::array<int, 3> cells_per_axis,
                bool half_offset = false);

  static CellPartition dyadic(const Box& box, int dim, int level,
                              bool half_offset = false);
  static CellPartition uniform(const Box& box, int dim, int cells_per_axis,
                               bool half_offset = false);

  int dim() const { return dim_; }
  const Box& box() const { return box_; }
  bool half_offset() const { return half_offset_; }
  int cells_along(int axis) const { return m_[static_cast<size_t>(axis)]; }
  int64_t cell_count() const { return count_; }

  // Index of the cell containing p, or kOutside.
  int64_t locate(const Pt& p) const;

  Pt cell_center(int64_t idx) const;
  Box cell_box(int64_t idx) const;

 private:
  Box box_{};
  int dim_ = 0;
  std::array<int, 3> m_{1, 1, 1};
  std::array<int, 3> slots_{1, 1, 1};  // per-axis index range (m or m+1 when offset)
  std::array<double, 3> edge_{0, 0, 0};
  bool half_offset_ = false;
  int64_t count_ = 0;
};

}  // namespace parset
