#include "efbound/parallel.hpp"

#include <atomic>

namespace efbound {
namespace {
std::atomic<int> g_thread_limit{0};
}

void set_thread_limit(int threads) { g_thread_limit = threads < 0 ? 0 : threads; }

int thread_limit() {
  int t = g_thread_limit.load();
#ifdef _OPENMP
  if (t == 0) t = omp_get_max_threads();
#else
  if (t == 0) t = 1;
#endif
  return t;
}

}  // namespace efbound
