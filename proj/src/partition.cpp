#include "parset/partition.hpp"

#include <cmath>

namespace parset {

CellPartition::CellPartition(const Box& box, int dim, std::array<int, 3> cells_per_axis,
                             bool half_offset)
    : box_(box), dim_(dim), m_(cells_per_axis), half_offset_(half_offset) {
  if (dim < 1 || dim > 3) throw GeometryError("partition: dim must be 1..3");
  count_ = 1;
  for (int a = 0; a < dim_; ++a) {
    if (m_[a] < 1) throw GeometryError("partition: cells_per_axis must be >= 1");
    if (!(box.hi[a] > box.lo[a])) throw GeometryError("partition: empty box");
    edge_[a] = (box.hi[a] - box.lo[a]) / m_[a];
    slots_[a] = half_offset_ ? m_[a] + 1 : m_[a];
    count_ *= slots_[a];
  }
  for (int a = dim_; a < 3; ++a) {
    m_[a] = 1;
    slots_[a] = 1;
  }
}

CellPartition CellPartition::dyadic(const Box& box, int dim, int level, bool half_offset) {
  if (level < 0 || level > 20) throw GeometryError("partition: dyadic level out of range");
  const int m = 1 << level;
  return uniform(box, dim, m, half_offset);
}

CellPartition CellPartition::uniform(const Box& box, int dim, int cells_per_axis,
                                     bool half_offset) {
  std::array<int, 3> m{1, 1, 1};
  for (int a = 0; a < dim; ++a) m[a] = cells_per_axis;
  return CellPartition(box, dim, m, half_offset);
}

int64_t CellPartition::locate(const Pt& p) const {
  int64_t idx = 0;
  for (int a = dim_ - 1; a >= 0; --a) {
    const double off = half_offset_ ? 0.5 * edge_[a] : 0.0;
    const double x = p[a] - box_.lo[a];
    if (x < 0.0 || x > box_.hi[a] - box_.lo[a]) return kOutside;
    // Slot 0 is the (possibly clipped) band before the first cut.
    int k = static_cast<int>(std::floor((x + off) / edge_[a]));
    if (k < 0) k = 0;
    if (k >= slots_[a]) k = slots_[a] - 1;
    idx = idx * slots_[a] + k;
  }
  return idx;
}

Box CellPartition::cell_box(int64_t idx) const {
  Box b;
  for (int a = 0; a < dim_; ++a) {
    // Decompose in the same axis order as locate().
    int64_t stride = 1;
    for (int aa = 0; aa < a; ++aa) stride *= slots_[aa];
    const int k = static_cast<int>((idx / stride) % slots_[a]);
    const double off = half_offset_ ? 0.5 * edge_[a] : 0.0;
    b.lo[a] = std::fmax(box_.lo[a], box_.lo[a] - off + k * edge_[a]);
    b.hi[a] = std::fmin(box_.hi[a], box_.lo[a] - off + (k + 1) * edge_[a]);
  }
  return b;
}

Pt CellPartition::cell_center(int64_t idx) const {
  return cell_box(idx).center(dim_);
}

}  // namespace parset
