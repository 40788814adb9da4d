#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace parset {

// Point in R^d, d <= 3. Unused coordinates stay zero so norms and distances
// work uniformly for d = 1, 2, 3.
struct Pt {
  std::array<double, 3> c{0.0, 0.0, 0.0};

  Pt() = default;
  Pt(double x) : c{x, 0.0, 0.0} {}
  Pt(double x, double y) : c{x, y, 0.0} {}
  Pt(double x, double y, double z) : c{x, y, z} {}

  double& operator[](int i) { return c[static_cast<size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<size_t>(i)]; }

  Pt& operator+=(const Pt& o) {
    for (int i = 0; i < 3; ++i) c[i] += o.c[i];
    return *this;
  }
  Pt& operator-=(const Pt& o) {
    for (int i = 0; i < 3; ++i) c[i] -= o.c[i];
    return *this;
  }
  Pt& operator*=(double s) {
    for (int i = 0; i < 3; ++i) c[i] *= s;
    return *this;
  }

  friend Pt operator+(Pt a, const Pt& b) { return a += b; }
  friend Pt operator-(Pt a, const Pt& b) { return a -= b; }
  friend Pt operator*(double s, Pt a) { return a *= s; }
  friend Pt operator*(Pt a, double s) { return a *= s; }
  friend bool operator==(const Pt& a, const Pt& b) { return a.c == b.c; }
};

inline double dot(const Pt& a, const Pt& b) {
  return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2];
}

inline double norm2(const Pt& a) { return dot(a, a); }
inline double norm(const Pt& a) { return std::sqrt(norm2(a)); }
inline double dist(const Pt& a, const Pt& b) { return norm(a - b); }

// Strict lexicographic order; used to break nearest-point ties deterministically.
inline bool lex_less(const Pt& a, const Pt& b) { return a.c < b.c; }

// Axis-aligned box [lo, hi].
struct Box {
  Pt lo, hi;

  bool contains(const Pt& p, int dim) const {
    for (int i = 0; i < dim; ++i)
      if (p[i] < lo[i] || p[i] > hi[i]) return false;
    return true;
  }
  Pt clamp(const Pt& p, int dim) const {
    Pt q = p;
    for (int i = 0; i < dim; ++i) q[i] = std::fmin(std::fmax(q[i], lo[i]), hi[i]);
    return q;
  }
  Pt center(int dim) const {
    Pt q;
    for (int i = 0; i < dim; ++i) q[i] = 0.5 * (lo[i] + hi[i]);
    return q;
  }
  double diameter(int dim) const {
    double s = 0;
    for (int i = 0; i < dim; ++i) s += (hi[i] - lo[i]) * (hi[i] - lo[i]);
    return std::sqrt(s);
  }
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace parset
