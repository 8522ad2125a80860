#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace glab {

// Worker count: GRAPHING_LAB_THREADS, default 1.
inline int worker_count() {
    const char* env = std::getenv("GRAPHING_LAB_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n >= 1 ? n : 1;
}

// Runs fn(i) for i in [0,n) and accumulates per-sample values into fixed
// 8192-sample blocks; block sums are added in block order, so the totals are
// bit-identical for any worker count.
template <typename Fn>
void blocked_accumulate(long n, Fn&& fn, double& sum_out, double& sumsq_out) {
    constexpr long kBlock = 8192;
    long n_blocks = (n + kBlock - 1) / kBlock;
    std::vector<double> block_sum(n_blocks, 0.0), block_sumsq(n_blocks, 0.0);

    auto run_block = [&](long bi) {
        long lo = bi * kBlock;
        long hi = std::min(n, lo + kBlock);
        double s = 0.0, s2 = 0.0;
        for (long i = lo; i < hi; ++i) {
            double v = fn(i);
            s += v;
            s2 += v * v;
        }
        block_sum[bi] = s;
        block_sumsq[bi] = s2;
    };

    int workers = worker_count();
    if (workers <= 1 || n_blocks <= 1) {
        for (long bi = 0; bi < n_blocks; ++bi) run_block(bi);
    } else {
        std::atomic<long> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (long bi = next.fetch_add(1); bi < n_blocks; bi = next.fetch_add(1)) run_block(bi);
            });
        for (auto& t : pool) t.join();
    }

    double s = 0.0, s2 = 0.0;
    for (long bi = 0; bi < n_blocks; ++bi) {
        s += block_sum[bi];
        s2 += block_sumsq[bi];
    }
    sum_out = s;
    sumsq_out = s2;
}

} // namespace glab
