#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "parset/grid.hpp"
#include "parset/setspec.hpp"

namespace parset {

inline constexpr float kNoGap = 3.0e37f;

// Distance field sampled at the window vertices: distance to A, metric
// projection anchor, and the anchor-gap used to detect the exoskeleton
// (distance via the best disagreeing neighbour anchor minus own distance;
// kNoGap where every neighbour agrees).
struct DistanceField {
  GridWindow window;
  std::vector<double> dist;    // per vertex
  std::vector<float> anchor;   // dim floats per vertex
  std::vector<float> gap;      // per vertex
  double eps = 0;              // oracle accuracy bound
  double tau_exo = 0;          // default exoskeleton threshold (2h)

  Pt anchor_at(int64_t v) const {
    Pt p;
    for (int a = 0; a < window.dim; ++a)
      p[a] = anchor[static_cast<size_t>(v) * window.dim + static_cast<size_t>(a)];
    return p;
  }
  bool exo(int64_t v) const { return gap[static_cast<size_t>(v)] < tau_exo; }
  bool exo(int64_t v, double tau) const { return gap[static_cast<size_t>(v)] < tau; }
};

// Exact-oracle path: evaluates distance and nearest point at every vertex.
DistanceField sample_field(const DistanceOracle& oracle, const GridWindow& window,
                           double tau_exo = -1);

// Rasterized path for point clouds: sites snap to the nearest vertex and an
// exact integer EDT provides nearest-site distances and anchors. eps grows
// by the snapping bound h*sqrt(d)/2.
DistanceField sample_field_points(const std::vector<Pt>& cloud, const GridWindow& window,
                                  double cloud_eps, double tau_exo = -1);

// Restricting region over anchor coordinates: a primitive union thickened by
// `thickness` (anchor counts as inside when within that distance).
struct BRegion {
  bool everything = true;
  std::vector<Primitive> prims;
  double thickness = 0;

  static BRegion all() { return BRegion{}; }
  static BRegion of(std::vector<Primitive> ps, double thick = 0) {
    BRegion b;
    b.everything = false;
    b.prims = std::move(ps);
    b.thickness = thick;
    return b;
  }
  bool contains(const Pt& x, int dim) const {
    if (everything) return true;
    for (const auto& p : prims)
      if (primitive_distance(p, x, dim).dist <= thickness) return true;
    return false;
  }
};

// Fractional vertex weights for restricted volumes: 0 when the anchor is
// outside B, otherwise ramping from 1/2 on the exoskeleton to 1 one cell
// away (the anchor-gap measures twice the distance to the bisector, which
// gives the sub-cell position of the preimage boundary).
std::vector<float> volume_weights(const DistanceField& f, const BRegion& b);

// Boolean vertex selections for contour restrictions and masks.
VertexSet select_preimage(const DistanceField& f, const BRegion& b, double tau = -1);
VertexSet select_preimage_closure(const DistanceField& f, const BRegion& b);

// Spec-facing cell masks.
RegionMask parallel_mask(const DistanceField& f, double r);
RegionMask exoskeleton_mask(const DistanceField& f, double tau = -1);
RegionMask preimage_mask(const DistanceField& f, const BRegion& b, double tau = -1);
RegionMask boundary_cells(const DistanceField& f, double r);
RegionMask positive_boundary_cells(const DistanceField& f, double r, double tau = -1);

// Corrected parallel volume lambda_d(A_r [∩ restriction]). Each cell
// contributes its {dist < r} fraction (exact for linear fields) times the
// mean corner weight. Throws GeometryError when weighted volume touches the
// window ring (margin rule).
double volume(const DistanceField& f, double r, const std::vector<float>* weights = nullptr);

// Slot accumulation for gridded measures: slot[v] in [0, nslots) or -1 for
// "outside". Output has nslots + 2 entries: [nslots] outside, [nslots + 1]
// exoskeleton remainder (the 1 - w share of weighted vertices).
void volume_by_slot(const DistanceField& f, double r, const std::vector<int32_t>& slot,
                    const std::vector<float>* weights, int nslots, std::vector<double>& out);

// Surface area via central volume differences with Richardson extrapolation
// over t0, t0/2, t0/4; the estimator of record for relative contents.
double surface_area_volume_difference(const DistanceField& f, double r, double t0,
                                      const std::vector<float>* weights = nullptr);

// Direct isocontour estimator (marching squares in 2D, marching tetrahedra
// in 3D, level-crossing count in 1D). `restriction`: cells participate only
// when every corner vertex is selected.
double surface_area_contour(const DistanceField& f, double r,
                            const VertexSet* restriction = nullptr);

// Contour masses per partition slot (marching cells assigned by cell
// center); used by spatial-mode surface measures. out has nslots+1 entries
// ([nslots] = outside).
void contour_by_slot(const DistanceField& f, double r,
                     const std::function<int32_t(const Pt&)>& slot_of, int nslots,
                     std::vector<double>& out);

}  // namespace parset
