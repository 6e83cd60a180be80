#pragma once

namespace compacton {

/// Applies the COMPACTON_LAB_THREADS cap (if set) to the OpenMP runtime and
/// returns the number of threads kernels will use.
int configure_threads();

/// Threads available to the next parallel region (1 without OpenMP).
int max_threads();

/// Forces the thread count for subsequent parallel regions on this thread.
void set_threads(int n);

}  // namespace compacton
