#pragma once

#include <cstdint>
#include <functional>

namespace parset {

// Global worker cap for all data-parallel loops (CLI --threads).
void set_thread_cap(int n);
int thread_cap();

// Runs fn(i) for i in [0, n). Chunks are handed out by an atomic counter so
// idle workers steal remaining chunks; results must be written to disjoint
// locations (callers combine partial sums in index order to stay
// deterministic).
void parallel_for(int64_t n, const std::function<void(int64_t)>& fn);

// Chunked variant: fn(begin, end) over disjoint ranges.
void parallel_for_chunks(int64_t n, int64_t chunk,
                         const std::function<void(int64_t, int64_t)>& fn);

}  // namespace parset
