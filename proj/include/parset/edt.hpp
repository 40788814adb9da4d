#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace parset {

// Exact squared Euclidean distance transform on an integer vertex lattice,
// separable lower-envelope sweeps with anchor propagation. All envelope
// comparisons are done in exact int64 rational arithmetic, so the result
// equals the brute-force nearest-site squared distance at every vertex.
//
// nv: vertices per axis (only the first `dim` entries used).
// sites: linear vertex indices (x + nv0*(y + nv1*z)), at least one.
// Outputs, both sized to the full vertex count:
//   sqdist[v] = min over sites s of |coords(v) - coords(s)|^2 (grid units)
//   site_of[v] = linear index of a winning site (deterministic).
void edt_exact(const std::array<int, 3>& nv, int dim, const std::vector<int64_t>& sites,
               std::vector<int64_t>& sqdist, std::vector<int32_t>& site_of);

}  // namespace parset
