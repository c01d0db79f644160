#pragma once

namespace scenefill {

/// Caps the OpenMP worker pool. Results are bit-identical for any cap:
/// every kernel writes each output element from exactly one thread with a
/// fixed accumulation order.
void setWorkerThreads(int n);
int workerThreads();

/// C[i, j] = sum_k A[i, k] * B[k, j], accumulated in ascending k per cell.
/// A is rows x depth (row-major), B is depth x cols (row-major),
/// C is rows x cols. Parallel over rows.
void gemmRowMajor(const float* a, const float* b, float* c, int rows, int depth, int cols);

}  // namespace scenefill
