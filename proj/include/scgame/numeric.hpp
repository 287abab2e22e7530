#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

namespace scgame {

// Utility comparisons use a relative tolerance with an absolute floor so that
// closed-form interval endpoints cannot flip equilibrium membership through
// rounding alone. Values within tolerance are treated as exact ties.
inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsTol = 1e-12;

inline double tie_tol(double a, double b) {
  return std::max(kAbsTol, kRelTol * std::max(std::fabs(a), std::fabs(b)));
}

inline bool near_eq(double a, double b) { return std::fabs(a - b) <= tie_tol(a, b); }

// a >= b up to a tie.
inline bool near_ge(double a, double b) { return a >= b - tie_tol(a, b); }

inline double clamp_pos(double x) { return x > 0.0 ? x : 0.0; }

// Fixed 9-significant-digit formatting shared by every emitter, so repeated
// runs produce byte-identical files.
inline std::string fmt9(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

namespace detail {
inline thread_local bool in_parallel_region = false;
}

// Splits [begin, end) into contiguous chunks, one worker thread per chunk.
// Callers write to disjoint, index-addressed slots, so results do not depend
// on scheduling. Nested calls run serially on the calling thread.
template <class Fn>
void parallel_for(long begin, long end, Fn&& fn) {
  const long n = end - begin;
  if (n <= 0) return;
  unsigned hw = std::thread::hardware_concurrency();
  if (hw < 2 || n < 2 || detail::in_parallel_region) {
    for (long i = begin; i < end; ++i) fn(i);
    return;
  }
  const long nthreads = std::min<long>(hw, n);
  const long chunk = (n + nthreads - 1) / nthreads;
  std::vector<std::thread> workers;
  workers.reserve(static_cast<size_t>(nthreads));
  for (long t = 0; t < nthreads; ++t) {
    const long lo = begin + t * chunk;
    const long hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([lo, hi, &fn] {
      detail::in_parallel_region = true;
      for (long i = lo; i < hi; ++i) fn(i);
      detail::in_parallel_region = false;
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace scgame
