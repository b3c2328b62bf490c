#include "zetalab/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "zetalab/errors.hpp"

namespace zetalab {

namespace {

template <typename T>
T pairwise(std::span<const T> xs) {
    if (xs.empty()) return T{};
    if (xs.size() <= 8) {
        T acc = xs[0];
        for (std::size_t i = 1; i < xs.size(); ++i) acc += xs[i];
        return acc;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise(xs.first(half)) + pairwise(xs.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> xs) { return pairwise(xs); }
cplx pairwise_sum(std::span<const cplx> xs) { return pairwise(xs); }

void validate(const Grid& grid) {
    require(std::isfinite(grid.t0), "grid: t0 must be finite");
    require(grid.dt > 0.0 && std::isfinite(grid.dt), "grid: dt must be positive");
    require(grid.count >= 1, "grid: count must be at least 1");
}

BoundReport make_report(double lhs, double rhs, std::string config) {
    require(rhs > 0.0, "bound report: rhs must be positive");
    return {lhs, rhs, lhs / rhs, std::move(config)};
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, std::size_t chunk, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& body) {
    if (n == 0) return;
    chunk = std::max<std::size_t>(chunk, 1);
    const std::size_t chunks = (n + chunk - 1) / chunk;
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), chunks));
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c)
            body(c * chunk, std::min(n, (c + 1) * chunk));
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t c = next.fetch_add(1);
                if (c >= chunks) return;
                try {
                    body(c * chunk, std::min(n, (c + 1) * chunk));
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = chunks;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace zetalab
