#pragma once

#include <cstdint>
#include <functional>

#include "fftstencil/grid.hpp"

namespace fftstencil {

/// Worker-thread budget for the parallel loops inside the solvers.
/// 0 means "hardware concurrency". The CLI sets this from --threads or the
/// FFTSTENCIL_THREADS environment variable.
void set_thread_count(int threads);
int thread_count();

/// Runs fn(begin, end) over disjoint chunks of [0, n), possibly from several
/// threads. Falls back to a single inline call for small n or one thread.
/// Results are bitwise independent of the thread count: every index is
/// processed exactly once with the same per-index arithmetic.
void parallel_for(Index n, const std::function<void(Index, Index)>& fn);

} // namespace fftstencil
