#pragma once

#include <cmath>
#include <cstdint>

namespace hodgerank {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so independent streams can be re-run or skipped
// without shifting each other. Generator id: "sm64ctr-v1" (splitmix64
// finalizer chain, Box-Muller normals).
class CounterRng {
public:
    static constexpr const char* kVersion = "sm64ctr-v1";

    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t bits(std::uint64_t stream, std::uint64_t counter) const {
        std::uint64_t h = mix(seed_ + 0x9e3779b97f4a7c15ull);
        h = mix(h ^ mix(stream + 0xbf58476d1ce4e5b9ull));
        h = mix(h ^ mix(counter + 0x94d049bb133111ebull));
        return h;
    }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform(std::uint64_t stream, std::uint64_t counter) const {
        return static_cast<double>(bits(stream, counter) >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n), n >= 1.
    std::uint64_t below(std::uint64_t stream, std::uint64_t counter, std::uint64_t n) const {
        using u128 = unsigned __int128;
        return static_cast<std::uint64_t>((static_cast<u128>(bits(stream, counter)) * n) >> 64);
    }

    /// Standard normal via Box-Muller; consumes counters 2c and 2c+1.
    double normal(std::uint64_t stream, std::uint64_t counter) const {
        double u1 = uniform(stream, 2 * counter);
        double u2 = uniform(stream, 2 * counter + 1);
        double r = std::sqrt(-2.0 * std::log1p(-u1)); // log(1-u1), u1 < 1
        return r * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    static std::uint64_t mix(std::uint64_t x) {
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ull;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebull;
        x ^= x >> 31;
        return x;
    }

    std::uint64_t seed_;
};

} // namespace hodgerank
