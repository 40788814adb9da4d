#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "parset/errors.hpp"
#include "parset/geom.hpp"
#include "parset/partition.hpp"

namespace parset {

// ---------------------------------------------------------------------------
// Declarative set descriptions
// ---------------------------------------------------------------------------

struct BallPrim {
  Pt center;
  double radius = 0;  // solid ball
};
struct BoxPrim {
  Pt lo, hi;
};
struct SegmentPrim {
  Pt a, b;
};
struct PointPrim {
  Pt p;
};
using Primitive = std::variant<BallPrim, BoxPrim, SegmentPrim, PointPrim>;

enum class Separation { osc, ssc, unknown };

// Contracting similarity x -> ratio * R x + t with R orthogonal.
struct SimilarityMap {
  double ratio = 0;
  std::array<double, 9> rot{1, 0, 0, 0, 1, 0, 0, 0, 1};  // row-major, identity-padded
  Pt translation;

  Pt apply(const Pt& x, int dim) const {
    Pt y;
    for (int i = 0; i < dim; ++i) {
      double s = 0;
      for (int j = 0; j < dim; ++j) s += rot[static_cast<size_t>(3 * i + j)] * x[j];
      y[i] = ratio * s + translation[i];
    }
    return y;
  }
};

struct IfsSpec {
  std::vector<SimilarityMap> maps;
  Separation separation = Separation::unknown;
};

struct LatticeSpec {
  double spacing = 1.0;
};
// {x : n.x = offset} with |n| = 1; a point for d=1, line for d=2, plane for d=3.
struct HyperplaneSpec {
  Pt normal;
  double offset = 0;
};
using UnboundedSpec = std::variant<LatticeSpec, HyperplaneSpec>;

struct SetSpec {
  int dim = 0;
  std::variant<std::vector<Primitive>, IfsSpec, UnboundedSpec> shape;

  bool is_primitive_union() const { return shape.index() == 0; }
  bool is_ifs() const { return shape.index() == 1; }
  bool is_unbounded() const { return shape.index() == 2; }
  const std::vector<Primitive>& primitives() const { return std::get<0>(shape); }
  const IfsSpec& ifs() const { return std::get<1>(shape); }
  const UnboundedSpec& unbounded() const { return std::get<2>(shape); }
};

// Parses and validates the JSON set-spec document. Throws SchemaError on
// malformed documents and GeometryError on invalid geometry (ratio >= 1,
// empty primitive, SSC images overlapping at depth 1, ...).
SetSpec parse_setspec(const std::string& text);
std::string to_json(const SetSpec& spec);

// Bounding ball B(c, R) with S_i(B) inside B for every map; c is the mean of
// the maps' fixed points.
struct HullBall {
  Pt center;
  double radius = 0;
  double diameter() const { return 2 * radius; }
};
HullBall attractor_hull(const SetSpec& spec);

struct AttractorCloud {
  std::vector<Pt> points;      // one per depth-n address, seed = hull center
  double covering_radius = 0;  // diam(hull) * (max ratio)^n
  int depth = 0;
};
AttractorCloud attractor_points(const SetSpec& spec, int depth,
                                int64_t point_cap = 10'000'000);

// Unique root of sum_i ratio_i^D = 1, bracketed bisection to 1e-12.
double moran_dimension(const SetSpec& spec);

struct LatticeCheckResult {
  bool lattice = false;
  bool inconclusive = false;
  // Witness p/q (q <= 64) for log r_i / log r_1, one entry per map.
  std::vector<std::pair<int64_t, int64_t>> witnesses;
  std::vector<double> errors;  // |log-ratio - p/q|
};
LatticeCheckResult lattice_check(const SetSpec& spec, double tolerance = 1e-9);

struct NaturalMeasureTable {
  CellPartition partition;
  std::vector<double> mass;  // per cell, sums to 1 (outside slot excluded)
  double outside_mass = 0;
  int depth = 0;
};
// Self-similar measure with weights ratio_i^D, accumulated by depth-n
// representative points. Requires OSC or SSC.
NaturalMeasureTable natural_measure(const SetSpec& spec, const CellPartition& partition,
                                    int depth, int64_t point_cap = 10'000'000);

// ---------------------------------------------------------------------------
// Distance oracles
// ---------------------------------------------------------------------------

struct DistanceQuery {
  double dist = 0;
  Pt nearest;
};

class DistanceOracle {
 public:
  virtual ~DistanceOracle() = default;
  virtual DistanceQuery query(const Pt& x) const = 0;
  double operator()(const Pt& x) const { return query(x).dist; }
  // Accuracy bound: |reported - true| <= eps.
  double accuracy() const { return eps_; }
  int dim() const { return dim_; }

 protected:
  double eps_ = 0;
  int dim_ = 0;
};

// PrimitiveUnion / Unbounded: exact closed forms, eps = 0, ties resolved to
// the lexicographically smallest nearest point. IFSAttractor: distance to the
// depth-n point cloud with eps = covering radius bound.
std::unique_ptr<DistanceOracle> distance_oracle(const SetSpec& spec, int ifs_depth = 10,
                                                int64_t point_cap = 10'000'000);

// Exact distance to a single primitive (exposed for tests).
DistanceQuery primitive_distance(const Primitive& prim, const Pt& x, int dim);

}  // namespace parset
