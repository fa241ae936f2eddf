#include "qgeom/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>

#ifdef QGEOM_HAVE_OPENMP
#include <omp.h>
#endif

namespace qgeom {

namespace {
std::atomic<int> g_threads{0};
}

void set_thread_count(int threads) { g_threads.store(threads < 0 ? 0 : threads); }

int thread_count() {
    const int t = g_threads.load();
#ifdef QGEOM_HAVE_OPENMP
    return t > 0 ? t : omp_get_max_threads();
#else
    return t > 0 ? t : 1;
#endif
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const int threads = thread_count();
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
#ifdef QGEOM_HAVE_OPENMP
    std::exception_ptr first;
    std::mutex guard;
    const auto count = static_cast<long long>(n);
#pragma omp parallel for num_threads(threads) schedule(dynamic, 4)
    for (long long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(guard);
            if (!first) first = std::current_exception();
        }
    }
    if (first) std::rethrow_exception(first);
#else
    for (std::size_t i = 0; i < n; ++i) body(i);
#endif
}

}  // namespace qgeom
