// parallel.hpp — ordered parallel map over an index range

#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace lzgen {

// Applies fn(i) for i in [0, n) and returns results in index order regardless of
// completion order. threads <= 1 runs sequentially.
template <typename F>
auto parallel_map(std::size_t n, unsigned threads, F&& fn)
    -> std::vector<decltype(fn(std::size_t{0}))> {
    using R = decltype(fn(std::size_t{0}));
    std::vector<R> out(n);
    if (n == 0) return out;
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    const unsigned nw = std::min<unsigned>(threads, static_cast<unsigned>(n));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errs(nw);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (unsigned w = 0; w < nw; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                    out[i] = fn(i);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

} // namespace lzgen
