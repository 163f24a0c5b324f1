#include "gmx/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace gmx {

int env_thread_cap() {
    const char* env = std::getenv("GMX_THREADS");
    if (env != nullptr) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    int workers = threads > 0 ? threads : env_thread_cap();
    workers = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(workers), n));

    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                fn(i);
            } catch (const std::exception& e) {
                throw std::runtime_error("item " + std::to_string(i) + ": " +
                                         e.what());
            }
        }
        return;
    }

    std::mutex mu;
    std::size_t first_failed = n;
    std::string first_error;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(mu);
                if (i < first_failed) {
                    first_failed = i;
                    first_error = e.what();
                }
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    if (first_failed < n)
        throw std::runtime_error("item " + std::to_string(first_failed) + ": " +
                                 first_error);
}

}  // namespace gmx
