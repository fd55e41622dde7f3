#pragma once

#include "qmono/errors.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace qmono {

/// Worker count from QMONO_THREADS (positive integer), 1 when unset.
inline unsigned thread_count_from_env()
{
    const char* v = std::getenv("QMONO_THREADS");
    if (!v || !*v)
        return 1;
    char* end = nullptr;
    long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 1 || n > 1024)
        throw UsageError(std::string("QMONO_THREADS must be a positive integer, got '") + v + "'");
    return static_cast<unsigned>(n);
}

/// Evaluates fn(0..n-1) on up to `threads` workers. Results come back in
/// index order regardless of completion order; the first failing index
/// (by position) has its exception rethrown.
template <class Fn>
auto parallel_map(std::size_t n, Fn&& fn, unsigned threads) -> std::vector<std::invoke_result_t<Fn&, std::size_t>>
{
    using R = std::invoke_result_t<Fn&, std::size_t>;
    std::vector<R> out(n);
    std::vector<std::exception_ptr> errors(n);
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    for (unsigned t = 0; t < count; ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

} // namespace qmono
