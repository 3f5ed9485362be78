#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace heis {

// Runs independent jobs on a small worker pool. Jobs must not share mutable
// state; results come back in submission order.
template <class R>
std::vector<R> run_jobs(const std::vector<std::function<R()>>& jobs, std::size_t threads = 0) {
    std::vector<R> out(jobs.size());
    std::vector<std::exception_ptr> errs(jobs.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                out[i] = jobs[i]();
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace heis
