#pragma once

#include <cstddef>
#include <functional>

namespace qgeom {

/// Worker count used by the parallel loops in this library. 0 = all cores.
void set_thread_count(int threads);
int thread_count();

/// Runs body(i) for i in [0, n). Each index must only write its own output slot;
/// exceptions thrown by the body are rethrown (the first one encountered) after the loop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace qgeom
