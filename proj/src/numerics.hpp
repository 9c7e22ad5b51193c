#pragma once
// Internal helpers shared by the library translation units.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "ccrheat/phase_space.hpp"

namespace ccrheat::detail {

// Gauss-Legendre nodes/weights on [a, b].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre(int n, double a, double b);

// out(zeta) = sum_z w(z) exp(i omega(zeta, z)) for zeta on `dst`, z on `src`.
// Separable evaluation; no aliasing guard.
std::vector<cplx> phase_sum(std::span<const cplx> w, const GridSpec& src, const GridSpec& dst);

// Runs body(chunk_index, begin, end) over [0, n) in fixed-size chunks across
// worker threads.
// Chunk boundaries depend only on n and chunk, so per-chunk partial results
// can be reduced in a deterministic order by the caller.
template <class Body>
void parallel_chunks(std::size_t n, std::size_t chunk, Body&& body);

std::size_t worker_count();

}  // namespace ccrheat::detail

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace ccrheat::detail {

template <class Body>
void parallel_chunks(std::size_t n, std::size_t chunk, Body&& body) {
  if (n == 0) return;
  const std::size_t chunks = (n + chunk - 1) / chunk;
  const std::size_t workers = std::min(worker_count(), chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c, c * chunk, std::min(n, (c + 1) * chunk));
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::size_t c = next++; c < chunks; c = next++) {
          body(c, c * chunk, std::min(n, (c + 1) * chunk));
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = chunks;
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace ccrheat::detail
