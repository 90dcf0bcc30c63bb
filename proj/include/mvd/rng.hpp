#pragma once

#include <cstdint>

namespace mvd {

// SplitMix64. Standard distributions are implementation-defined, so all seeded
// generation goes through this to stay bit-reproducible across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    bool coin() { return next() >> 63; }

private:
    std::uint64_t state_;
};

}  // namespace mvd
