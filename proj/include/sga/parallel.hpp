#pragma once

#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

namespace sga {

// Splits [begin, end) into contiguous chunks, folds each chunk into its own
// State with body(state, i), then merges the chunk states into `init` in
// chunk order. `init` must be the identity accumulator (empty counts), since
// every chunk starts from a copy of it. The result is deterministic as long
// as merge is associative over chunk boundaries (max, sum, top-k unions all
// qualify); it does not depend on the thread count. Runs serially when the
// machine offers a single hardware thread or the range is small.
template <class State, class Body, class Merge>
State parallel_accumulate(std::uint64_t begin, std::uint64_t end, State init, Body body,
                          Merge merge) {
    const std::uint64_t span = end > begin ? end - begin : 0;
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (workers <= 1 || span < 2048) {
        for (std::uint64_t i = begin; i < end; ++i) body(init, i);
        return init;
    }

    const std::uint64_t chunks = workers;
    std::vector<State> states(chunks, init);
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    for (std::uint64_t c = 0; c < chunks; ++c) {
        std::uint64_t lo = begin + span * c / chunks;
        std::uint64_t hi = begin + span * (c + 1) / chunks;
        pool.emplace_back([&states, c, lo, hi, &body] {
            for (std::uint64_t i = lo; i < hi; ++i) body(states[c], i);
        });
    }
    for (auto& t : pool) t.join();
    State total = std::move(init);
    for (auto& s : states) merge(total, std::move(s));
    return total;
}

} // namespace sga
