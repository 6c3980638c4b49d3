#pragma once

namespace sharpwt {

/// Applies the SHARPWT_THREADS cap (unset or 0 = OpenMP default). Returns the thread count in effect.
int configure_threads();
/// Caps OpenMP workers at `requested` (0 = OpenMP default).
int configure_threads(int requested);
/// Thread count OpenMP regions will use.
int thread_count();

}  // namespace sharpwt
