#pragma once

#include <cstddef>
#include <functional>

namespace gmx {

/// Worker cap from GMX_THREADS (0 or unset = hardware concurrency).
int env_thread_cap();

/// Runs fn(i) for i in [0, n). threads = 0 picks the env/hardware cap,
/// 1 runs serially. Results must be written to per-index slots; completion
/// order is unspecified. If any invocation throws, the exception for the
/// smallest failing index is rethrown with that index prefixed.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace gmx
