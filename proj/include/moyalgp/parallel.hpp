#ifndef MOYALGP_PARALLEL_HPP
#define MOYALGP_PARALLEL_HPP

#include <cstdlib>
#include <thread>
#include <vector>

namespace moyalgp {

/// Number of worker threads for grid loops. Controlled by MOYAL_GP_THREADS
/// (0 or unset = hardware concurrency).
inline int thread_count() {
    long n = 0;
    if (const char* env = std::getenv("MOYAL_GP_THREADS")) {
        n = std::strtol(env, nullptr, 10);
    }
    if (n <= 0) n = static_cast<long>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (n > 256) n = 256;
    return static_cast<int>(n);
}

/// Runs f(i) for i in [0, n). Chunks are contiguous and every chunk writes
/// disjoint output slots, so results are identical for any thread count.
template <class F>
void parallel_for(int n, F&& f) {
    const int nthreads = thread_count();
    if (nthreads == 1 || n < 256) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    const int chunks = std::min(nthreads, n);
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    for (int c = 0; c < chunks; ++c) {
        const int lo = static_cast<int>(static_cast<long long>(n) * c / chunks);
        const int hi = static_cast<int>(static_cast<long long>(n) * (c + 1) / chunks);
        pool.emplace_back([lo, hi, &f] {
            for (int i = lo; i < hi; ++i) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace moyalgp

#endif
