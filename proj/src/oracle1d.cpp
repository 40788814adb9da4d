#include "parset/oracle1d.hpp"

#include <algorithm>
#include <cmath>

namespace parset {

// ---------------------------------------------------------------------------
// RangeSet
// ---------------------------------------------------------------------------

RangeSet::RangeSet(std::vector<std::pair<double, double>> ranges) : ranges_(std::move(ranges)) {
  std::sort(ranges_.begin(), ranges_.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& r : ranges_) {
    if (!(r.second > r.first)) continue;
    if (!merged.empty() && r.first <= merged.back().second)
      merged.back().second = std::fmax(merged.back().second, r.second);
    else
      merged.push_back(r);
  }
  ranges_ = std::move(merged);
}

RangeSet RangeSet::all() {
  RangeSet s;
  s.all_ = true;
  return s;
}

bool RangeSet::contains(double x) const {
  if (all_) return true;
  auto it = std::upper_bound(ranges_.begin(), ranges_.end(), x,
                             [](double v, const std::pair<double, double>& r) { return v < r.first; });
  if (it == ranges_.begin()) return false;
  --it;
  return x >= it->first && x < it->second;
}

double RangeSet::overlap(double a, double b) const {
  if (b <= a) return 0;
  if (all_) return b - a;
  double acc = 0;
  for (const auto& r : ranges_) {
    const double lo = std::fmax(a, r.first);
    const double hi = std::fmin(b, r.second);
    if (hi > lo) acc += hi - lo;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// IntervalUnion
// ---------------------------------------------------------------------------

IntervalUnion::IntervalUnion(std::vector<std::pair<double, double>> intervals) {
  if (intervals.empty()) throw GeometryError("interval union: empty");
  std::sort(intervals.begin(), intervals.end());
  for (const auto& iv : intervals) {
    if (!(iv.second >= iv.first)) throw GeometryError("interval union: inverted interval");
    if (!intervals_.empty() && iv.first <= intervals_.back().second)
      intervals_.back().second = std::fmax(intervals_.back().second, iv.second);
    else
      intervals_.push_back(iv);
  }
  for (const auto& iv : intervals_) base_volume_ += iv.second - iv.first;
  full_ = restrict(RangeSet::all());
}

IntervalUnion IntervalUnion::from_ifs(const SetSpec& spec, int depth, int64_t point_cap) {
  if (!spec.is_ifs() || spec.dim != 1)
    throw GeometryError("from_ifs: requires a 1D IFS spec");
  const auto& maps = spec.ifs().maps;
  if (std::pow(static_cast<double>(maps.size()), depth) > static_cast<double>(point_cap))
    throw ResourceError("from_ifs: depth cap exceeded");
  const HullBall hull = attractor_hull(spec);
  std::vector<std::pair<double, double>> cur{
      {hull.center[0] - hull.radius, hull.center[0] + hull.radius}};
  for (int level = 0; level < depth; ++level) {
    std::vector<std::pair<double, double>> next;
    next.reserve(cur.size() * maps.size());
    for (const auto& m : maps) {
      const double scale = m.ratio * m.rot[0];  // rot[0] = +-1 in 1D
      for (const auto& iv : cur) {
        const double e0 = scale * iv.first + m.translation[0];
        const double e1 = scale * iv.second + m.translation[0];
        next.emplace_back(std::fmin(e0, e1), std::fmax(e0, e1));
      }
    }
    cur = std::move(next);
  }
  return IntervalUnion(std::move(cur));
}

IntervalUnion::Restricted IntervalUnion::restrict(const RangeSet& anchors) const {
  Restricted view;
  const auto m = intervals_.size();
  for (size_t i = 0; i < m; ++i) {
    view.base_ += anchors.overlap(intervals_[i].first, intervals_[i].second);
    // Interior gap to the right of component i: two fronts capped at half the gap.
    if (i + 1 < m) {
      const double half = 0.5 * (intervals_[i + 1].first - intervals_[i].second);
      if (anchors.contains(intervals_[i].second)) view.caps_.push_back(half);
      if (anchors.contains(intervals_[i + 1].first)) view.caps_.push_back(half);
    }
  }
  if (anchors.contains(intervals_.front().first)) view.caps_.push_back(kInf);
  if (anchors.contains(intervals_.back().second)) view.caps_.push_back(kInf);
  std::sort(view.caps_.begin(), view.caps_.end());
  view.prefix_.reserve(view.caps_.size() + 1);
  view.prefix_.push_back(0);
  for (double c : view.caps_)
    view.prefix_.push_back(view.prefix_.back() + (std::isinf(c) ? 0.0 : c));
  return view;
}

double IntervalUnion::parallel_volume(double r) const { return full_.volume(r); }

int IntervalUnion::components(double r) const {
  // Components merge when a gap is strictly smaller than 2r.
  int open = 0;
  for (size_t i = 0; i + 1 < intervals_.size(); ++i)
    if (intervals_[i + 1].first - intervals_[i].second > 2 * r) ++open;
  return open + 1;
}

std::pair<double, double> IntervalUnion::one_sided_derivatives(double r) const {
  return full_.one_sided_derivatives(r);
}

double IntervalUnion::Restricted::volume(double r) const {
  if (!(r >= 0)) throw GeometryError("parallel volume: r must be >= 0");
  // V(r) = base + sum_j min(r, cap_j)
  const auto it = std::upper_bound(caps_.begin(), caps_.end(), r);
  const auto k = static_cast<size_t>(it - caps_.begin());  // caps <= r
  const double below = prefix_[k];
  const double active = static_cast<double>(caps_.size() - k);
  return base_ + below + active * r;
}

std::pair<double, double> IntervalUnion::Restricted::one_sided_derivatives(double r) const {
  const auto right = caps_.end() - std::upper_bound(caps_.begin(), caps_.end(), r);
  const auto left = caps_.end() - std::lower_bound(caps_.begin(), caps_.end(), r);
  return {static_cast<double>(left), static_cast<double>(right)};
}

namespace {

// ∫ r^{p} dr over [a, b] with the p = -1 special case.
double power_integral(double a, double b, double p) {
  if (std::fabs(p + 1.0) < 1e-14) return std::log(b / a);
  return (std::pow(b, p + 1) - std::pow(a, p + 1)) / (p + 1);
}

}  // namespace

double IntervalUnion::Restricted::integral_volume(double t, double u, double s) const {
  if (!(t > 0 && u > t)) throw GeometryError("integral_volume: need 0 < t < u");
  // On a piece with no cap crossings V(r) = c + e r; integrate c r^{s-2} + e r^{s-1}.
  double acc = 0;
  double lo = t;
  auto it = std::upper_bound(caps_.begin(), caps_.end(), t);
  while (lo < u) {
    const double next_cap = it == caps_.end() ? kInf : *it;
    const double hi = std::fmin(u, next_cap);
    const auto k = static_cast<size_t>(it - caps_.begin());
    const double c = base_ + prefix_[k];
    const double e = static_cast<double>(caps_.size() - k);
    if (hi > lo) acc += c * power_integral(lo, hi, s - 2) + e * power_integral(lo, hi, s - 1);
    lo = hi;
    if (it != caps_.end() && next_cap <= u) ++it;
    if (std::isinf(next_cap)) break;
  }
  return acc;
}

double IntervalUnion::Restricted::integral_boundary(double t, double u, double s) const {
  if (!(t > 0 && u > t)) throw GeometryError("integral_boundary: need 0 < t < u");
  double acc = 0;
  double lo = t;
  auto it = std::upper_bound(caps_.begin(), caps_.end(), t);
  while (lo < u) {
    const double next_cap = it == caps_.end() ? kInf : *it;
    const double hi = std::fmin(u, next_cap);
    const auto k = static_cast<size_t>(it - caps_.begin());
    const double fronts = static_cast<double>(caps_.size() - k);
    if (hi > lo) acc += fronts * power_integral(lo, hi, s - 1);
    lo = hi;
    if (it != caps_.end() && next_cap <= u) ++it;
    if (std::isinf(next_cap)) break;
  }
  return acc;
}

}  // namespace parset
