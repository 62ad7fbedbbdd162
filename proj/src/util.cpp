#include "gvlab/util.hpp"

#include <cstdlib>
#include <string>

namespace gvlab {

uint64_t enumeration_budget() {
    if (const char* env = std::getenv("GVLAB_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0)
            return static_cast<uint64_t>(v);
    }
    return kDefaultBudget;
}

void parallel_chunks(uint64_t total, unsigned workers,
                     const std::function<void(unsigned, uint64_t, uint64_t)>& fn) {
    if (workers < 1)
        workers = 1;
    if (total == 0)
        return;
    const uint64_t chunks = std::min<uint64_t>(workers, total);
    if (chunks == 1) {
        fn(0, 0, total);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    const uint64_t step = total / chunks;
    const uint64_t extra = total % chunks;
    uint64_t begin = 0;
    for (uint64_t c = 0; c < chunks; ++c) {
        const uint64_t len = step + (c < extra ? 1 : 0);
        pool.emplace_back(fn, static_cast<unsigned>(c), begin, begin + len);
        begin += len;
    }
    for (auto& t : pool)
        t.join();
}

} // namespace gvlab
