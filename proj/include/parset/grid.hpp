#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "parset/errors.hpp"
#include "parset/geom.hpp"

namespace parset {

// Axis-aligned sampling window. Scalar fields are sampled at the lattice
// vertices origin + i*h (cells[a]+1 vertices per axis); region masks and
// partitions live on the cells between them.
struct GridWindow {
  Pt origin;
  double h = 0;
  std::array<int, 3> cells{1, 1, 1};
  int dim = 0;

  GridWindow() = default;
  GridWindow(const Box& box, double spacing, int d, int64_t cell_cap = 40'000'000);

  int verts(int a) const { return cells[static_cast<size_t>(a)] + 1; }
  int64_t vertex_count() const {
    int64_t n = 1;
    for (int a = 0; a < dim; ++a) n *= verts(a);
    return n;
  }
  int64_t cell_count() const {
    int64_t n = 1;
    for (int a = 0; a < dim; ++a) n *= cells[static_cast<size_t>(a)];
    return n;
  }

  int64_t vertex_index(int ix, int iy = 0, int iz = 0) const {
    return ix + static_cast<int64_t>(verts(0)) * (iy + static_cast<int64_t>(verts(1)) * iz);
  }
  std::array<int, 3> vertex_coords(int64_t v) const {
    std::array<int, 3> c{0, 0, 0};
    c[0] = static_cast<int>(v % verts(0));
    v /= verts(0);
    c[1] = static_cast<int>(v % verts(1));
    c[2] = static_cast<int>(v / verts(1));
    return c;
  }
  Pt vertex_pos(int ix, int iy = 0, int iz = 0) const {
    Pt p;
    p[0] = origin[0] + ix * h;
    if (dim > 1) p[1] = origin[1] + iy * h;
    if (dim > 2) p[2] = origin[2] + iz * h;
    return p;
  }

  int64_t cell_index(int ix, int iy = 0, int iz = 0) const {
    return ix + static_cast<int64_t>(cells[0]) * (iy + static_cast<int64_t>(cells[1]) * iz);
  }
  std::array<int, 3> cell_coords(int64_t c) const {
    std::array<int, 3> r{0, 0, 0};
    r[0] = static_cast<int>(c % cells[0]);
    c /= cells[0];
    r[1] = static_cast<int>(c % cells[1]);
    r[2] = static_cast<int>(c / cells[1]);
    return r;
  }
  Pt cell_center(int64_t c) const {
    const auto cc = cell_coords(c);
    Pt p;
    for (int a = 0; a < dim; ++a) p[a] = origin[a] + (cc[static_cast<size_t>(a)] + 0.5) * h;
    return p;
  }
  Box box() const {
    Box b;
    b.lo = origin;
    for (int a = 0; a < dim; ++a) b.hi[a] = origin[a] + cells[static_cast<size_t>(a)] * h;
    return b;
  }
};

enum class MaskTag { parallel_set, boundary, positive_boundary, preimage, exoskeleton, generic };

// Boolean cell mask over a window.
struct RegionMask {
  GridWindow window;
  std::vector<uint8_t> cells;
  MaskTag tag = MaskTag::generic;

  int64_t count() const {
    int64_t n = 0;
    for (uint8_t c : cells) n += c;
    return n;
  }
  bool subset_of(const RegionMask& other) const {
    for (size_t i = 0; i < cells.size(); ++i)
      if (cells[i] && !other.cells[i]) return false;
    return true;
  }
};

// Boolean vertex selection over a window (restrictions are applied at the
// sampling vertices, i.e. at anchor granularity).
using VertexSet = std::vector<uint8_t>;

}  // namespace parset
