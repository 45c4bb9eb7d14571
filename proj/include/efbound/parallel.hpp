#ifndef EFBOUND_PARALLEL_HPP
#define EFBOUND_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace efbound {

// Cap for OpenMP regions started by this library; 0 keeps the runtime default.
void set_thread_limit(int threads);
int thread_limit();

// Calls fn(i) for i in [0, n). Exceptions thrown by fn are captured per index
// and the one with the smallest index is rethrown after the loop, so the
// outcome does not depend on scheduling.
template <class Fn>
void for_each_index(std::size_t n, bool parallel, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) if (parallel && count > 1) num_threads(thread_limit())
  for (long long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace efbound

#endif  // EFBOUND_PARALLEL_HPP
