#ifndef MIXMORAN_RNG_HPP
#define MIXMORAN_RNG_HPP

#include <cstdint>
#include <random>

namespace mixmoran {

// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a) noexcept;
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) noexcept;

// Caller-owned generator state. There is no global randomness anywhere in the
// library; independent replicates get independent streams via derive_seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

    static Rng stream(std::uint64_t base, std::uint64_t index) { return Rng(derive_seed(base, index)); }

    std::uint64_t next() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on {0, ..., bound - 1}; bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace mixmoran

#endif
