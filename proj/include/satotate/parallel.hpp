#pragma once

// Minimal fork/join helpers. Work is always split into fixed-size chunks that
// do not depend on the worker count, so every reduction below produces the
// same bits for any number of threads.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace satotate {

// 0 means "hardware concurrency".
void set_thread_count(unsigned threads);
unsigned thread_count();

inline constexpr std::size_t kDefaultChunk = 1U << 14;

// Calls body(lo, hi) for consecutive chunks covering [begin, end).
template <class Body>
void parallel_for_chunks(std::size_t begin, std::size_t end, std::size_t chunk, Body&& body) {
    if (end <= begin) return;
    chunk = std::max<std::size_t>(chunk, 1);
    const std::size_t chunks = (end - begin + chunk - 1) / chunk;
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), chunks));
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) {
            const std::size_t lo = begin + c * chunk;
            body(lo, std::min(end, lo + chunk));
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= chunks) return;
            try {
                const std::size_t lo = begin + c * chunk;
                body(lo, std::min(end, lo + chunk));
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(chunks);
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

template <class Body>
void parallel_for(std::size_t begin, std::size_t end, Body&& body) {
    parallel_for_chunks(begin, end, 1, [&](std::size_t lo, std::size_t) { body(lo); });
}

// Pairwise reduction of per-chunk partial sums; term(i) for i in [begin, end).
template <class Term>
double deterministic_sum(std::size_t begin, std::size_t end, Term&& term,
                         std::size_t chunk = kDefaultChunk) {
    if (end <= begin) return 0.0;
    const std::size_t chunks = (end - begin + chunk - 1) / chunk;
    std::vector<double> partial(chunks, 0.0);
    parallel_for_chunks(begin, end, chunk, [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        partial[(lo - begin) / chunk] = s;
    });
    for (std::size_t width = 1; width < partial.size(); width *= 2) {
        for (std::size_t i = 0; i + width < partial.size(); i += 2 * width) {
            partial[i] += partial[i + width];
        }
    }
    return partial[0];
}

}  // namespace satotate
