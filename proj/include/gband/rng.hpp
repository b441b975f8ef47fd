#pragma once

#include <cstdint>
#include <random>

namespace gband {

/// splitmix64 step; used to turn (master seed, stream index) into independent seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return mix64(master ^ mix64(stream + 1));
}

/// The project-wide generator: mt19937_64 with uniform doubles taken from the
/// top 53 bits. Both the engine sequence and the double mapping are fixed by
/// the standard, so identical seeds reproduce identical draws everywhere.
/// Draw order is part of every sampling contract (documented per call site).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound); unbiased via rejection. bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return r % bound;
        }
    }

    bool coin() { return (engine_() & 1u) != 0; }

private:
    std::mt19937_64 engine_;
};

} // namespace gband
