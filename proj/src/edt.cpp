#include "parset/edt.hpp"

#include <limits>

#include "parset/errors.hpp"
#include "parset/par.hpp"

namespace parset {

namespace {

constexpr int64_t kFar = std::numeric_limits<int64_t>::max() / 4;

// One lower-envelope sweep along a line: g[i] holds the squared distance
// collected so far at slot i, src[i] the winning site. Writes the updated
// line through (i - j)^2 + g[j] minimization. Envelope boundaries are kept
// as exact rationals num/den (den > 0).
struct LineBuffers {
  std::vector<int> v;
  std::vector<int64_t> znum;
  std::vector<int64_t> zden;
  std::vector<int64_t> g;
  std::vector<int32_t> src;
  std::vector<int64_t> out_d;
  std::vector<int32_t> out_s;

  void resize(size_t n) {
    v.resize(n);
    znum.resize(n + 1);
    zden.resize(n + 1);
    g.resize(n);
    src.resize(n);
    out_d.resize(n);
    out_s.resize(n);
  }
};

void envelope_pass(int n, LineBuffers& b) {
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (b.g[static_cast<size_t>(q)] >= kFar) continue;
    // Boundary where parabola q overtakes parabola p (p < q):
    //   s = (g[q] + q^2 - g[p] - p^2) / (2(q - p))
    // Comparisons are cross-multiplied (denominators positive), so the
    // envelope is exact. z[0] is a -inf sentinel and never compared.
    int64_t num = 0, den = 1;
    while (k >= 0) {
      const int p = b.v[static_cast<size_t>(k)];
      num = b.g[static_cast<size_t>(q)] + static_cast<int64_t>(q) * q -
            b.g[static_cast<size_t>(p)] - static_cast<int64_t>(p) * p;
      den = 2 * static_cast<int64_t>(q - p);
      if (k > 0 && num * b.zden[static_cast<size_t>(k)] <= b.znum[static_cast<size_t>(k)] * den) {
        --k;
        continue;
      }
      break;
    }
    if (k < 0) {
      k = 0;
      b.v[0] = q;
      b.znum[0] = 0;
      b.zden[0] = 1;
    } else {
      ++k;
      b.v[static_cast<size_t>(k)] = q;
      b.znum[static_cast<size_t>(k)] = num;
      b.zden[static_cast<size_t>(k)] = den;
    }
  }
  if (k < 0) {
    for (int x = 0; x < n; ++x) {
      b.out_d[static_cast<size_t>(x)] = kFar;
      b.out_s[static_cast<size_t>(x)] = -1;
    }
    return;
  }
  int j = 0;
  for (int x = 0; x < n; ++x) {
    while (j < k && b.znum[static_cast<size_t>(j + 1)] <=
                        static_cast<int64_t>(x) * b.zden[static_cast<size_t>(j + 1)])
      ++j;
    const int p = b.v[static_cast<size_t>(j)];
    const int64_t dx = x - p;
    b.out_d[static_cast<size_t>(x)] = dx * dx + b.g[static_cast<size_t>(p)];
    b.out_s[static_cast<size_t>(x)] = b.src[static_cast<size_t>(p)];
  }
}

}  // namespace

void edt_exact(const std::array<int, 3>& nv, int dim, const std::vector<int64_t>& sites,
               std::vector<int64_t>& sqdist, std::vector<int32_t>& site_of) {
  if (sites.empty()) throw GeometryError("edt: no sites");
  const int nx = nv[0], ny = dim > 1 ? nv[1] : 1, nz = dim > 2 ? nv[2] : 1;
  const int64_t total = static_cast<int64_t>(nx) * ny * nz;
  sqdist.assign(static_cast<size_t>(total), kFar);
  site_of.assign(static_cast<size_t>(total), -1);
  for (int64_t s : sites) {
    sqdist[static_cast<size_t>(s)] = 0;
    site_of[static_cast<size_t>(s)] = static_cast<int32_t>(s);
  }

  // Pass 1 (x): two linear sweeps per row give |dx|^2 to the nearest site in
  // the row; ties prefer the left site (deterministic).
  parallel_for(static_cast<int64_t>(ny) * nz, [&](int64_t row) {
    const int64_t base = row * nx;
    int last = -1;
    for (int x = 0; x < nx; ++x) {
      const size_t i = static_cast<size_t>(base + x);
      if (sqdist[i] == 0)
        last = x;
      else if (last >= 0) {
        const int64_t dx = x - last;
        sqdist[i] = dx * dx;
        site_of[i] = site_of[static_cast<size_t>(base + last)];
      }
    }
    last = -1;
    for (int x = nx - 1; x >= 0; --x) {
      const size_t i = static_cast<size_t>(base + x);
      if (sqdist[i] == 0)
        last = x;
      else if (last >= 0) {
        const int64_t dx = last - x;
        const int64_t d2 = dx * dx;
        if (d2 < sqdist[i]) {
          sqdist[i] = d2;
          site_of[i] = site_of[static_cast<size_t>(base + last)];
        }
      }
    }
  });

  // Pass over y, then z: lower envelope along the axis.
  if (dim >= 2) {
    parallel_for(static_cast<int64_t>(nx) * nz, [&](int64_t col) {
      thread_local LineBuffers buf;
      buf.resize(static_cast<size_t>(ny));
      const int x = static_cast<int>(col % nx);
      const int z = static_cast<int>(col / nx);
      const int64_t plane = static_cast<int64_t>(z) * nx * ny;
      for (int y = 0; y < ny; ++y) {
        const size_t i = static_cast<size_t>(plane + static_cast<int64_t>(y) * nx + x);
        buf.g[static_cast<size_t>(y)] = sqdist[i];
        buf.src[static_cast<size_t>(y)] = site_of[i];
      }
      envelope_pass(ny, buf);
      for (int y = 0; y < ny; ++y) {
        const size_t i = static_cast<size_t>(plane + static_cast<int64_t>(y) * nx + x);
        sqdist[i] = buf.out_d[static_cast<size_t>(y)];
        site_of[i] = buf.out_s[static_cast<size_t>(y)];
      }
    });
  }
  if (dim >= 3) {
    parallel_for(static_cast<int64_t>(nx) * ny, [&](int64_t col) {
      thread_local LineBuffers buf;
      buf.resize(static_cast<size_t>(nz));
      const int x = static_cast<int>(col % nx);
      const int y = static_cast<int>(col / nx);
      const int64_t stride = static_cast<int64_t>(nx) * ny;
      for (int z = 0; z < nz; ++z) {
        const size_t i = static_cast<size_t>(static_cast<int64_t>(z) * stride +
                                             static_cast<int64_t>(y) * nx + x);
        buf.g[static_cast<size_t>(z)] = sqdist[i];
        buf.src[static_cast<size_t>(z)] = site_of[i];
      }
      envelope_pass(nz, buf);
      for (int z = 0; z < nz; ++z) {
        const size_t i = static_cast<size_t>(static_cast<int64_t>(z) * stride +
                                             static_cast<int64_t>(y) * nx + x);
        sqdist[i] = buf.out_d[static_cast<size_t>(z)];
        site_of[i] = buf.out_s[static_cast<size_t>(z)];
      }
    });
  }
}

}  // namespace parset
