#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "parset/setspec.hpp"

namespace parset {

// Sorted disjoint half-open ranges [a, b) on the line. Used to restrict
// 1D quantities to anchor sets (metric-projection preimages).
class RangeSet {
 public:
  RangeSet() = default;  // empty
  explicit RangeSet(std::vector<std::pair<double, double>> ranges);
  static RangeSet all();

  bool is_all() const { return all_; }
  bool contains(double x) const;
  // Lebesgue measure of the overlap with [a, b].
  double overlap(double a, double b) const;
  const std::vector<std::pair<double, double>>& ranges() const { return ranges_; }

 private:
  std::vector<std::pair<double, double>> ranges_;
  bool all_ = false;
};

// Exact parallel-set engine for finite unions of closed intervals on the
// line. Every quantity is computed in closed form: the parallel volume is
// piecewise linear in r with breakpoints where gaps close, the boundary
// count is the number of still-active growth fronts, and the logarithmic
// integrals used by Cesaro averages are integrated analytically piece by
// piece. Serves as the independent oracle for the grid pipeline and as the
// exact path for 1D scenarios.
class IntervalUnion {
 public:
  explicit IntervalUnion(std::vector<std::pair<double, double>> intervals);
  // Depth-n cylinder intervals of a 1D IFS (images of the hull interval).
  static IntervalUnion from_ifs(const SetSpec& spec, int depth,
                                int64_t point_cap = 10'000'000);

  int component_count() const { return static_cast<int>(intervals_.size()); }
  const std::vector<std::pair<double, double>>& intervals() const { return intervals_; }
  double volume() const { return base_volume_; }
  double min() const { return intervals_.front().first; }
  double max() const { return intervals_.back().second; }

  // lambda_1(A_r); exact, O(log m).
  double parallel_volume(double r) const;
  // Number of connected components of A_r.
  int components(double r) const;
  // H^0(bd A_r) = 2 * components at generic r (right-limit at gap closings).
  double boundary_count(double r) const { return 2.0 * components(r); }
  // (left, right) one-sided derivatives of r -> parallel_volume(r).
  std::pair<double, double> one_sided_derivatives(double r) const;

  // Restriction to anchors in Q: V_{A,Q}(r) = lambda(A_r ∩ preimage(Q)).
  // Building the view is O(m); queries on it are O(log m).
  class Restricted {
   public:
    double volume(double r) const;
    std::pair<double, double> one_sided_derivatives(double r) const;
    // H^0(bd A_r ∩ preimage(Q)) = number of active fronts anchored in Q;
    // equals the right derivative of volume().
    double boundary_count(double r) const { return one_sided_derivatives(r).second; }
    // Exact integrals over [t, u] used by the averaged contents:
    //   integral_volume: ∫ V(r) r^{s-2} dr
    //   integral_boundary: ∫ S(r) r^{s-1} dr   (S right-continuous)
    double integral_volume(double t, double u, double s) const;
    double integral_boundary(double t, double u, double s) const;

   private:
    friend class IntervalUnion;
    double base_ = 0;            // lambda(A ∩ Q)
    std::vector<double> caps_;   // growth-front caps, ascending (kInf for outer rays)
    std::vector<double> prefix_; // prefix sums of finite caps
  };
  Restricted restrict(const RangeSet& anchors) const;

 private:
  std::vector<std::pair<double, double>> intervals_;  // merged, sorted
  double base_volume_ = 0;
  Restricted full_;
};

}  // namespace parset
