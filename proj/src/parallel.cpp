#include "scenefill/parallel.hpp"

#include <algorithm>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace scenefill {

namespace {
int g_threads = 0;  // 0 = runtime default
}

void setWorkerThreads(int n) {
  g_threads = std::max(1, n);
#ifdef _OPENMP
  omp_set_num_threads(g_threads);
#endif
}

int workerThreads() {
#ifdef _OPENMP
  return g_threads > 0 ? g_threads : omp_get_max_threads();
#else
  return 1;
#endif
}

void gemmRowMajor(const float* a, const float* b, float* c, int rows, int depth, int cols) {
  // Outer-product accumulation: each C row is filled by one thread, and each
  // cell sums strictly in ascending k, so the result does not depend on the
  // thread count. The j loop is the vectorizable one.
#pragma omp parallel for schedule(static)
  for (int i = 0; i < rows; ++i) {
    float* crow = c + static_cast<std::size_t>(i) * cols;
    std::memset(crow, 0, sizeof(float) * cols);
    const float* arow = a + static_cast<std::size_t>(i) * depth;
    for (int k = 0; k < depth; ++k) {
      float aik = arow[k];
      if (aik == 0.0f) continue;
      const float* brow = b + static_cast<std::size_t>(k) * cols;
#pragma omp simd
      for (int j = 0; j < cols; ++j) crow[j] += aik * brow[j];
    }
  }
}

}  // namespace scenefill
