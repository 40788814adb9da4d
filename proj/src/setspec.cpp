#include "parset/setspec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include <json.hpp>

namespace parset {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

Pt parse_vec(const json& j, int& dim, const std::string& what) {
  if (!j.is_array() || j.empty() || j.size() > 3)
    throw SchemaError(what + ": expected array of 1..3 numbers");
  Pt p;
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw SchemaError(what + ": non-numeric coordinate");
    p[static_cast<int>(i)] = j[i].get<double>();
  }
  const int d = static_cast<int>(j.size());
  if (dim == 0) dim = d;
  if (dim != d) throw SchemaError(what + ": inconsistent dimension");
  return p;
}

double parse_num(const json& j, const std::string& what) {
  if (!j.is_number()) throw SchemaError(what + ": expected number");
  return j.get<double>();
}

Primitive parse_primitive(const json& j, int& dim, int index) {
  const std::string where = "primitives[" + std::to_string(index) + "]";
  if (!j.is_object() || !j.contains("type") || !j.contains("params"))
    throw SchemaError(where + ": expected {type, params}");
  const std::string type = j["type"].get<std::string>();
  const json& p = j["params"];
  if (type == "ball") {
    BallPrim b;
    b.center = parse_vec(p.at("center"), dim, where + ".center");
    b.radius = parse_num(p.at("radius"), where + ".radius");
    if (!(b.radius > 0)) throw GeometryError(where + ": ball radius must be > 0");
    return b;
  }
  if (type == "box") {
    BoxPrim b;
    b.lo = parse_vec(p.at("min"), dim, where + ".min");
    b.hi = parse_vec(p.at("max"), dim, where + ".max");
    for (int a = 0; a < dim; ++a)
      if (!(b.lo[a] <= b.hi[a])) throw GeometryError(where + ": box min > max");
    return b;
  }
  if (type == "segment") {
    SegmentPrim s;
    s.a = parse_vec(p.at("p"), dim, where + ".p");
    s.b = parse_vec(p.at("q"), dim, where + ".q");
    return s;
  }
  if (type == "point") {
    PointPrim pt;
    pt.p = parse_vec(p.at("p"), dim, where + ".p");
    return pt;
  }
  throw SchemaError(where + ": unknown primitive type '" + type + "'");
}

SimilarityMap parse_map(const json& j, int& dim, int index) {
  const std::string where = "ifs[" + std::to_string(index) + "]";
  if (!j.is_object()) throw SchemaError(where + ": expected object");
  SimilarityMap m;
  m.ratio = parse_num(j.at("ratio"), where + ".ratio");
  m.translation = parse_vec(j.at("translation"), dim, where + ".translation");
  if (!(m.ratio > 0 && m.ratio < 1))
    throw GeometryError(where + ": ratio must be in (0,1), got " + std::to_string(m.ratio));
  if (j.contains("rotation_deg")) {
    if (dim != 2) throw SchemaError(where + ": rotation_deg only valid in 2D");
    const double a = parse_num(j["rotation_deg"], where + ".rotation_deg") * M_PI / 180.0;
    m.rot = {std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1};
  } else if (j.contains("rotation_matrix")) {
    const json& rm = j["rotation_matrix"];
    if (!rm.is_array() || static_cast<int>(rm.size()) != dim)
      throw SchemaError(where + ": rotation_matrix must be dim x dim");
    for (int r = 0; r < dim; ++r) {
      if (!rm[r].is_array() || static_cast<int>(rm[r].size()) != dim)
        throw SchemaError(where + ": rotation_matrix must be dim x dim");
      for (int c = 0; c < dim; ++c)
        m.rot[static_cast<size_t>(3 * r + c)] = parse_num(rm[r][c], where + ".rotation_matrix");
    }
    // Orthogonality check: R R^T = I.
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        double s = 0;
        for (int k = 0; k < dim; ++k)
          s += m.rot[static_cast<size_t>(3 * r + k)] * m.rot[static_cast<size_t>(3 * c + k)];
        if (std::fabs(s - (r == c ? 1.0 : 0.0)) > 1e-9)
          throw GeometryError(where + ": rotation_matrix not orthogonal");
      }
  }
  return m;
}

}  // namespace

SetSpec parse_setspec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("variant"))
    throw SchemaError("missing top-level 'variant'");
  const std::string variant = doc["variant"].get<std::string>();

  SetSpec spec;
  int dim = 0;
  try {
    if (variant == "primitive_union") {
      if (!doc.contains("primitives") || !doc["primitives"].is_array() ||
          doc["primitives"].empty())
        throw SchemaError("primitive_union: 'primitives' must be a nonempty array");
      std::vector<Primitive> prims;
      int idx = 0;
      for (const auto& pj : doc["primitives"]) prims.push_back(parse_primitive(pj, dim, idx++));
      spec.shape = std::move(prims);
    } else if (variant == "ifs") {
      if (!doc.contains("ifs") || !doc["ifs"].is_array() || doc["ifs"].empty())
        throw SchemaError("ifs: 'ifs' must be a nonempty array of maps");
      IfsSpec ifs;
      int idx = 0;
      for (const auto& mj : doc["ifs"]) ifs.maps.push_back(parse_map(mj, dim, idx++));
      if (doc.contains("separation")) {
        const std::string s = doc["separation"].get<std::string>();
        if (s == "osc")
          ifs.separation = Separation::osc;
        else if (s == "ssc")
          ifs.separation = Separation::ssc;
        else if (s == "unknown")
          ifs.separation = Separation::unknown;
        else
          throw SchemaError("separation must be one of osc|ssc|unknown");
      }
      spec.shape = std::move(ifs);
    } else if (variant == "unbounded") {
      if (!doc.contains("unbounded") || !doc["unbounded"].is_object())
        throw SchemaError("unbounded: missing 'unbounded' object");
      const json& u = doc["unbounded"];
      const std::string type = u.at("type").get<std::string>();
      const json& p = u.at("params");
      if (type == "lattice") {
        LatticeSpec l;
        l.spacing = parse_num(p.at("spacing"), "lattice.spacing");
        if (!(l.spacing > 0)) throw GeometryError("lattice spacing must be > 0");
        if (!p.contains("dim")) throw SchemaError("lattice params need 'dim'");
        dim = p["dim"].get<int>();
        if (dim < 1 || dim > 3) throw SchemaError("lattice dim must be 1..3");
        spec.shape = UnboundedSpec{l};
      } else if (type == "hyperplane") {
        HyperplaneSpec hp;
        hp.normal = parse_vec(p.at("normal"), dim, "hyperplane.normal");
        hp.offset = parse_num(p.at("offset"), "hyperplane.offset");
        const double n = norm(hp.normal);
        if (!(n > 0)) throw GeometryError("hyperplane normal must be nonzero");
        hp.normal *= 1.0 / n;
        spec.shape = UnboundedSpec{hp};
      } else {
        throw SchemaError("unbounded type must be lattice|hyperplane");
      }
    } else {
      throw SchemaError("unknown variant '" + variant + "'");
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("schema: ") + e.what());
  }
  spec.dim = dim;

  // Depth-1 disjointness of hull-ball images for SSC-flagged systems.
  if (spec.is_ifs() && spec.ifs().separation == Separation::ssc) {
    const HullBall hull = attractor_hull(spec);
    const auto& maps = spec.ifs().maps;
    for (size_t i = 0; i < maps.size(); ++i)
      for (size_t j = i + 1; j < maps.size(); ++j) {
        const Pt ci = maps[i].apply(hull.center, dim);
        const Pt cj = maps[j].apply(hull.center, dim);
        if (dist(ci, cj) <= (maps[i].ratio + maps[j].ratio) * hull.radius)
          throw GeometryError("ssc: images of maps " + std::to_string(i) + " and " +
                              std::to_string(j) + " are not disjoint at depth 1");
      }
  }
  return spec;
}

std::string to_json(const SetSpec& spec) {
  json doc;
  auto vec = [&](const Pt& p) {
    json a = json::array();
    for (int i = 0; i < spec.dim; ++i) a.push_back(p[i]);
    return a;
  };
  if (spec.is_primitive_union()) {
    doc["variant"] = "primitive_union";
    json prims = json::array();
    for (const auto& prim : spec.primitives()) {
      json p;
      if (const auto* b = std::get_if<BallPrim>(&prim)) {
        p = {{"type", "ball"}, {"params", {{"center", vec(b->center)}, {"radius", b->radius}}}};
      } else if (const auto* b = std::get_if<BoxPrim>(&prim)) {
        p = {{"type", "box"}, {"params", {{"min", vec(b->lo)}, {"max", vec(b->hi)}}}};
      } else if (const auto* s = std::get_if<SegmentPrim>(&prim)) {
        p = {{"type", "segment"}, {"params", {{"p", vec(s->a)}, {"q", vec(s->b)}}}};
      } else {
        p = {{"type", "point"}, {"params", {{"p", vec(std::get<PointPrim>(prim).p)}}}};
      }
      prims.push_back(p);
    }
    doc["primitives"] = prims;
  } else if (spec.is_ifs()) {
    doc["variant"] = "ifs";
    json maps = json::array();
    for (const auto& m : spec.ifs().maps) {
      json mj = {{"ratio", m.ratio}, {"translation", vec(m.translation)}};
      if (spec.dim > 1) {
        json rm = json::array();
        for (int r = 0; r < spec.dim; ++r) {
          json row = json::array();
          for (int c = 0; c < spec.dim; ++c) row.push_back(m.rot[static_cast<size_t>(3 * r + c)]);
          rm.push_back(row);
        }
        mj["rotation_matrix"] = rm;
      }
      maps.push_back(mj);
    }
    doc["ifs"] = maps;
    doc["separation"] = spec.ifs().separation == Separation::osc   ? "osc"
                        : spec.ifs().separation == Separation::ssc ? "ssc"
                                                                   : "unknown";
  } else {
    doc["variant"] = "unbounded";
    if (const auto* l = std::get_if<LatticeSpec>(&spec.unbounded())) {
      doc["unbounded"] = {{"type", "lattice"},
                          {"params", {{"spacing", l->spacing}, {"dim", spec.dim}}}};
    } else {
      const auto& hp = std::get<HyperplaneSpec>(spec.unbounded());
      doc["unbounded"] = {{"type", "hyperplane"},
                          {"params", {{"normal", vec(hp.normal)}, {"offset", hp.offset}}}};
    }
  }
  return doc.dump(2);
}

// ---------------------------------------------------------------------------
// Primitive distances (exact closed forms)
// ---------------------------------------------------------------------------

DistanceQuery primitive_distance(const Primitive& prim, const Pt& x, int dim) {
  DistanceQuery q;
  if (const auto* b = std::get_if<BallPrim>(&prim)) {
    const Pt v = x - b->center;
    const double n = norm(v);
    if (n <= b->radius) return {0.0, x};
    q.dist = n - b->radius;
    q.nearest = b->center + (b->radius / n) * v;
    return q;
  }
  if (const auto* b = std::get_if<BoxPrim>(&prim)) {
    Box box{b->lo, b->hi};
    q.nearest = box.clamp(x, dim);
    q.dist = dist(x, q.nearest);
    return q;
  }
  if (const auto* s = std::get_if<SegmentPrim>(&prim)) {
    const Pt ab = s->b - s->a;
    const double len2 = norm2(ab);
    double t = len2 > 0 ? dot(x - s->a, ab) / len2 : 0.0;
    t = std::fmin(std::fmax(t, 0.0), 1.0);
    q.nearest = s->a + t * ab;
    q.dist = dist(x, q.nearest);
    return q;
  }
  const auto& p = std::get<PointPrim>(prim);
  return {dist(x, p.p), p.p};
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

namespace {

class PrimitiveUnionOracle final : public DistanceOracle {
 public:
  PrimitiveUnionOracle(std::vector<Primitive> prims, int dim) : prims_(std::move(prims)) {
    dim_ = dim;
    eps_ = 0;
  }
  DistanceQuery query(const Pt& x) const override {
    DistanceQuery best{kInf, Pt{}};
    for (const auto& prim : prims_) {
      DistanceQuery q = primitive_distance(prim, x, dim_);
      if (q.dist < best.dist || (q.dist == best.dist && lex_less(q.nearest, best.nearest)))
        best = q;
    }
    return best;
  }

 private:
  std::vector<Primitive> prims_;
};

class LatticeOracle final : public DistanceOracle {
 public:
  LatticeOracle(double spacing, int dim) : a_(spacing) {
    dim_ = dim;
    eps_ = 0;
  }
  DistanceQuery query(const Pt& x) const override {
    DistanceQuery q;
    for (int i = 0; i < dim_; ++i) {
      const double t = x[i] / a_;
      double k = std::floor(t);
      // Half-integer ties go down: lexicographically smallest nearest point.
      if (t - k > 0.5) k += 1;
      q.nearest[i] = k * a_;
    }
    q.dist = dist(x, q.nearest);
    return q;
  }

 private:
  double a_;
};

class HyperplaneOracle final : public DistanceOracle {
 public:
  HyperplaneOracle(const HyperplaneSpec& hp, int dim) : hp_(hp) {
    dim_ = dim;
    eps_ = 0;
  }
  DistanceQuery query(const Pt& x) const override {
    const double s = dot(hp_.normal, x) - hp_.offset;
    DistanceQuery q;
    q.dist = std::fabs(s);
    q.nearest = x - s * hp_.normal;
    return q;
  }

 private:
  HyperplaneSpec hp_;
};

// Uniform-bucket nearest neighbour over a finite point cloud. Query expands
// shells of buckets until the best distance is certified.
class CloudIndex {
 public:
  CloudIndex(std::vector<Pt> pts, int dim) : pts_(std::move(pts)), dim_(dim) {
    Box bb{pts_[0], pts_[0]};
    for (const auto& p : pts_)
      for (int a = 0; a < dim_; ++a) {
        bb.lo[a] = std::fmin(bb.lo[a], p[a]);
        bb.hi[a] = std::fmax(bb.hi[a], p[a]);
      }
    lo_ = bb.lo;
    const double target = std::pow(static_cast<double>(pts_.size()), 1.0 / dim_);
    for (int a = 0; a < dim_; ++a) {
      const double ext = std::fmax(bb.hi[a] - bb.lo[a], 1e-12);
      n_[a] = std::max(1, std::min(1024, static_cast<int>(target)));
      cell_[a] = ext / n_[a];
      if (!(cell_[a] > 0)) cell_[a] = 1;
    }
    for (int a = dim_; a < 3; ++a) {
      n_[a] = 1;
      cell_[a] = 1;
    }
    buckets_.resize(static_cast<size_t>(n_[0]) * n_[1] * n_[2]);
    for (size_t i = 0; i < pts_.size(); ++i) buckets_[bucket_of(pts_[i])].push_back(static_cast<int>(i));
  }

  DistanceQuery query(const Pt& x) const {
    std::array<int, 3> c{0, 0, 0};
    for (int a = 0; a < dim_; ++a) {
      c[a] = static_cast<int>(std::floor((x[a] - lo_[a]) / cell_[a]));
      c[a] = std::max(0, std::min(n_[a] - 1, c[a]));
    }
    double best = kInf;
    int best_idx = -1;
    const double min_cell = std::min({cell_[0], dim_ > 1 ? cell_[1] : kInf, dim_ > 2 ? cell_[2] : kInf});
    const int max_ring = n_[0] + n_[1] + n_[2];
    for (int ring = 0;; ++ring) {
      // Once a hit is certified closer than any unvisited shell, stop.
      if (best_idx >= 0 && best <= (ring - 1) * min_cell) break;
      if (ring > max_ring) break;
      scan_ring(x, c, ring, best, best_idx);
    }
    DistanceQuery q;
    q.dist = best;
    q.nearest = pts_[static_cast<size_t>(best_idx)];
    return q;
  }

 private:
  size_t bucket_of(const Pt& p) const {
    std::array<int, 3> c{0, 0, 0};
    for (int a = 0; a < dim_; ++a) {
      c[a] = static_cast<int>(std::floor((p[a] - lo_[a]) / cell_[a]));
      c[a] = std::max(0, std::min(n_[a] - 1, c[a]));
    }
    return (static_cast<size_t>(c[2]) * n_[1] + c[1]) * n_[0] + static_cast<size_t>(c[0]);
  }

  void scan_bucket(const Pt& x, int bx, int by, int bz, double& best, int& best_idx) const {
    if (bx < 0 || bx >= n_[0] || by < 0 || by >= n_[1] || bz < 0 || bz >= n_[2]) return;
    const auto& b = buckets_[(static_cast<size_t>(bz) * n_[1] + by) * n_[0] + static_cast<size_t>(bx)];
    for (int idx : b) {
      const double d = dist(x, pts_[static_cast<size_t>(idx)]);
      if (d < best || (d == best && best_idx >= 0 &&
                       lex_less(pts_[static_cast<size_t>(idx)], pts_[static_cast<size_t>(best_idx)]))) {
        best = d;
        best_idx = idx;
      }
    }
  }

  void scan_ring(const Pt& x, const std::array<int, 3>& c, int ring, double& best,
                 int& best_idx) const {
    if (dim_ == 1) {
      if (ring == 0) {
        scan_bucket(x, c[0], 0, 0, best, best_idx);
      } else {
        scan_bucket(x, c[0] - ring, 0, 0, best, best_idx);
        scan_bucket(x, c[0] + ring, 0, 0, best, best_idx);
      }
      return;
    }
    if (dim_ == 2) {
      for (int dx = -ring; dx <= ring; ++dx)
        for (int dy = -ring; dy <= ring; ++dy)
          if (std::max(std::abs(dx), std::abs(dy)) == ring)
            scan_bucket(x, c[0] + dx, c[1] + dy, 0, best, best_idx);
      return;
    }
    for (int dx = -ring; dx <= ring; ++dx)
      for (int dy = -ring; dy <= ring; ++dy)
        for (int dz = -ring; dz <= ring; ++dz)
          if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) == ring)
            scan_bucket(x, c[0] + dx, c[1] + dy, c[2] + dz, best, best_idx);
  }

  std::vector<Pt> pts_;
  int dim_;
  Pt lo_;
  std::array<int, 3> n_{1, 1, 1};
  std::array<double, 3> cell_{1, 1, 1};
  std::vector<std::vector<int>> buckets_;
};

class CloudOracle final : public DistanceOracle {
 public:
  CloudOracle(AttractorCloud cloud, int dim)
      : cloud_(std::move(cloud)), index_(cloud_.points, dim) {
    dim_ = dim;
    eps_ = cloud_.covering_radius;
  }
  DistanceQuery query(const Pt& x) const override { return index_.query(x); }

 private:
  AttractorCloud cloud_;
  CloudIndex index_;
};

}  // namespace

std::unique_ptr<DistanceOracle> distance_oracle(const SetSpec& spec, int ifs_depth,
                                                int64_t point_cap) {
  if (spec.is_primitive_union())
    return std::make_unique<PrimitiveUnionOracle>(spec.primitives(), spec.dim);
  if (spec.is_unbounded()) {
    if (const auto* l = std::get_if<LatticeSpec>(&spec.unbounded()))
      return std::make_unique<LatticeOracle>(l->spacing, spec.dim);
    return std::make_unique<HyperplaneOracle>(std::get<HyperplaneSpec>(spec.unbounded()),
                                              spec.dim);
  }
  return std::make_unique<CloudOracle>(attractor_points(spec, ifs_depth, point_cap), spec.dim);
}

// ---------------------------------------------------------------------------
// IFS machinery
// ---------------------------------------------------------------------------

HullBall attractor_hull(const SetSpec& spec) {
  if (!spec.is_ifs()) throw GeometryError("attractor_hull: spec is not an IFS");
  const auto& maps = spec.ifs().maps;
  const int d = spec.dim;
  // Fixed point of S(x) = r R x + t solves (I - r R) p = t; for our similarity
  // maps the iteration p <- S(p) converges geometrically, which avoids a
  // linear solve and works uniformly in d.
  Pt c;
  for (const auto& m : maps) {
    Pt p = m.translation;
    for (int it = 0; it < 200; ++it) p = m.apply(p, d);
    c += p;
  }
  c *= 1.0 / static_cast<double>(maps.size());
  double R = 0;
  for (const auto& m : maps)
    R = std::fmax(R, dist(m.apply(c, d), c) / (1.0 - m.ratio));
  return {c, R};
}

AttractorCloud attractor_points(const SetSpec& spec, int depth, int64_t point_cap) {
  if (!spec.is_ifs()) throw GeometryError("attractor_points: spec is not an IFS");
  if (depth < 1) throw GeometryError("attractor_points: depth must be >= 1");
  const auto& maps = spec.ifs().maps;
  const int d = spec.dim;
  const auto n_maps = static_cast<int64_t>(maps.size());
  double count = std::pow(static_cast<double>(n_maps), depth);
  if (count > static_cast<double>(point_cap))
    throw ResourceError("attractor_points: N^depth exceeds point cap");

  const HullBall hull = attractor_hull(spec);
  double rmax = 0;
  for (const auto& m : maps) rmax = std::fmax(rmax, m.ratio);

  std::vector<Pt> cur{hull.center};
  for (int level = 0; level < depth; ++level) {
    std::vector<Pt> next;
    next.reserve(cur.size() * static_cast<size_t>(n_maps));
    for (const auto& m : maps)
      for (const auto& p : cur) next.push_back(m.apply(p, d));
    cur = std::move(next);
  }
  AttractorCloud cloud;
  cloud.points = std::move(cur);
  cloud.covering_radius = hull.diameter() * std::pow(rmax, depth);
  cloud.depth = depth;
  return cloud;
}

double moran_dimension(const SetSpec& spec) {
  if (!spec.is_ifs()) throw GeometryError("moran_dimension: spec is not an IFS");
  const auto& maps = spec.ifs().maps;
  const int d = spec.dim;
  auto f = [&](double s) {
    double acc = 0;
    for (const auto& m : maps) acc += std::pow(m.ratio, s);
    return acc - 1.0;
  };
  double lo = 0.0, hi = static_cast<double>(d);
  if (f(lo) <= 0) return 0.0;   // single map: sum = ratio^0 = 1 at s = 0
  if (f(hi) > 0) return hi;     // overlapping maps; dimension saturates at d
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? lo : hi) = mid;
    if (hi - lo < 1e-13) break;
  }
  return 0.5 * (lo + hi);
}

LatticeCheckResult lattice_check(const SetSpec& spec, double tolerance) {
  if (!spec.is_ifs()) throw GeometryError("lattice_check: spec is not an IFS");
  const auto& maps = spec.ifs().maps;
  if (maps.size() < 2) throw GeometryError("lattice_check: need >= 2 maps");
  constexpr int64_t kDenCap = 64;

  LatticeCheckResult res;
  res.lattice = true;
  const double base = std::log(maps[0].ratio);
  for (const auto& m : maps) {
    const double x = std::log(m.ratio) / base;
    // Best rational approximation p/q with q <= 64 via continued fractions.
    int64_t best_p = 0, best_q = 1;
    double best_err = kInf;
    {
      double v = x;
      int64_t p0 = 1, q0 = 0, p1 = static_cast<int64_t>(std::floor(v)), q1 = 1;
      auto consider = [&](int64_t p, int64_t q) {
        if (q < 1 || q > kDenCap) return;
        const double err = std::fabs(x - static_cast<double>(p) / static_cast<double>(q));
        if (err < best_err) {
          best_err = err;
          best_p = p;
          best_q = q;
        }
      };
      consider(p1, q1);
      v -= std::floor(v);
      for (int it = 0; it < 40 && v > 1e-15; ++it) {
        v = 1.0 / v;
        const double a = std::floor(v);
        if (a > 1e15) break;
        const int64_t ai = static_cast<int64_t>(a);
        const int64_t p2 = ai * p1 + p0;
        const int64_t q2 = ai * q1 + q0;
        if (q2 > kDenCap) {
          // Also consider the best semiconvergent under the cap.
          const int64_t k = (kDenCap - q0) / q1;
          if (k >= 1) consider(k * p1 + p0, k * q1 + q0);
          break;
        }
        consider(p2, q2);
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        v -= a;
      }
    }
    res.witnesses.emplace_back(best_p, best_q);
    res.errors.push_back(best_err);
    if (best_err > tolerance) res.lattice = false;
    if (best_err >= 0.5 * tolerance && best_err <= 2.0 * tolerance) res.inconclusive = true;
  }
  return res;
}

NaturalMeasureTable natural_measure(const SetSpec& spec, const CellPartition& partition,
                                    int depth, int64_t point_cap) {
  if (!spec.is_ifs()) throw GeometryError("natural_measure: spec is not an IFS");
  const auto& ifs = spec.ifs();
  if (ifs.separation == Separation::unknown)
    throw GeometryError("natural_measure: requires OSC or SSC flag");
  const int d = spec.dim;
  const auto n_maps = ifs.maps.size();
  if (std::pow(static_cast<double>(n_maps), depth) > static_cast<double>(point_cap))
    throw ResourceError("natural_measure: depth cap exceeded");

  const double D = moran_dimension(spec);
  std::vector<double> weight(n_maps);
  for (size_t i = 0; i < n_maps; ++i) weight[i] = std::pow(ifs.maps[i].ratio, D);

  const HullBall hull = attractor_hull(spec);
  NaturalMeasureTable table;
  table.partition = partition;
  table.depth = depth;
  table.mass.assign(static_cast<size_t>(partition.cell_count()), 0.0);

  // Depth-first over addresses; accumulates weight at the representative point.
  struct Frame {
    Pt p;
    double w;
    int level;
  };
  std::vector<Frame> stack{{hull.center, 1.0, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.level == depth) {
      const int64_t cell = partition.locate(f.p);
      if (cell == CellPartition::kOutside)
        table.outside_mass += f.w;
      else
        table.mass[static_cast<size_t>(cell)] += f.w;
      continue;
    }
    for (size_t i = 0; i < n_maps; ++i)
      stack.push_back({ifs.maps[i].apply(f.p, d), f.w * weight[i], f.level + 1});
  }
  return table;
}

}  // namespace parset
