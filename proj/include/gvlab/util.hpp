#ifndef GVLAB_UTIL_HPP
#define GVLAB_UTIL_HPP

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace gvlab {

// SplitMix64: the single source of randomness in this project.  Chosen
// because its output is a pure function of the 64-bit state, so seeded
// runs are reproducible on every platform.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform draw from [0, bound) with rejection, so the distribution is
    // exactly uniform rather than modulo-biased.
    uint64_t below(uint64_t bound) {
        const uint64_t residue = (UINT64_MAX % bound + 1) % bound;
        const uint64_t limit = UINT64_MAX - residue;
        uint64_t x = next();
        while (residue != 0 && x > limit)
            x = next();
        return x % bound;
    }

    double unit_real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Decorrelated per-item seed for partitionable Monte Carlo streams: item i of
// a run seeded with s always sees the same generator, no matter which worker
// processes it.
inline uint64_t mix_seed(uint64_t seed, uint64_t item) {
    SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (item + 1)));
    return g.next();
}

// Default cap on enumeration sizes (candidate vectors, matrix spaces).
inline constexpr uint64_t kDefaultBudget = uint64_t(1) << 28;

// Effective enumeration budget: GVLAB_BUDGET overrides the default, an
// explicit argument overrides both.
uint64_t enumeration_budget();

// Splits [0, total) into at most `workers` contiguous chunks and runs
// fn(chunk_index, begin, end) on each from a worker pool.  Results must be
// combined by the caller in chunk order; with associative exact arithmetic
// this makes the outcome independent of the worker count.
void parallel_chunks(uint64_t total, unsigned workers,
                     const std::function<void(unsigned, uint64_t, uint64_t)>& fn);

} // namespace gvlab

#endif
