#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace polygeom {

/// Runs fn(w) for w in [0, threads) on separate threads (inline when
/// threads <= 1) and rethrows the first worker exception.
template <class Fn>
void run_workers(unsigned threads, Fn&& fn) {
    threads = std::max(1u, threads);
    if (threads == 1) {
        fn(0u);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                fn(w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// Sums fn(i) over i in [0, n), splitting the indices round-robin across
/// `threads` workers. Integer addition makes the result independent of the
/// partition.
template <class Fn>
std::uint64_t parallel_sum(std::size_t n, unsigned threads, Fn&& fn) {
    threads = std::max(1u, threads);
    if (threads == 1 || n < 2) {
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < n; ++i) total += fn(i);
        return total;
    }
    std::vector<std::uint64_t> partial(threads, 0);
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += threads) partial[w] += fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::uint64_t total = 0;
    for (auto p : partial) total += p;
    return total;
}

}  // namespace polygeom
