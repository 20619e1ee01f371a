#pragma once

#include <cstdint>
#include <random>

namespace incilab {

// mt19937_64 plus range helpers whose output depends only on the engine
// stream (std distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform integer in [lo, hi].
    long uniform(long lo, long hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t v;
        do v = eng_();
        while (v >= limit);
        return lo + static_cast<long>(v % span);
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<long>(n) - 1)); }

private:
    std::mt19937_64 eng_;
};

}  // namespace incilab
