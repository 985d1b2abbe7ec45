#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace kncr::detail {

inline unsigned worker_count(std::size_t tasks) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::clamp<std::size_t>(tasks / 32, 1, hw));
}

/// Runs body(state, task) for every task in [0, count) on `workers` threads; each worker owns
/// one state made by make(). Returns the states for the caller to reduce.
template <class MakeState, class Body>
auto parallel_tasks(std::size_t count, unsigned workers, MakeState make, Body body) {
    using State = decltype(make());
    workers = static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1)));
    std::vector<State> states;
    states.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) states.push_back(make());
    if (workers == 1) {
        for (std::size_t t = 0; t < count; ++t) body(states[0], t);
        return states;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t t; (t = next.fetch_add(1)) < count;) body(states[w], t);
            } catch (...) {
                errors[w] = std::current_exception();
                next.store(count);
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return states;
}

template <class MakeState, class Body>
auto parallel_tasks(std::size_t count, MakeState make, Body body) {
    return parallel_tasks(count, worker_count(count), std::move(make), std::move(body));
}

}  // namespace kncr::detail
