#include "parset/grid.hpp"

#include <cmath>

namespace parset {

GridWindow::GridWindow(const Box& box, double spacing, int d, int64_t cell_cap) {
  if (d < 1 || d > 3) throw GeometryError("window: dim must be 1..3");
  if (!(spacing > 0)) throw GeometryError("window: spacing must be > 0");
  dim = d;
  h = spacing;
  origin = box.lo;
  int64_t total = 1;
  for (int a = 0; a < d; ++a) {
    const double ext = box.hi[a] - box.lo[a];
    if (!(ext > 0)) throw GeometryError("window: empty extent");
    cells[static_cast<size_t>(a)] = static_cast<int>(std::llround(ext / spacing));
    if (cells[static_cast<size_t>(a)] < 2) throw GeometryError("window: extents must be >= 2 cells");
    total *= cells[static_cast<size_t>(a)];
  }
  if (total > cell_cap) throw ResourceError("window: cell count exceeds cap");
}

}  // namespace parset
