#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace stackmc {

// SplitMix64 finalizer. Used to derive independent seeds for substreams.
std::uint64_t mix64(std::uint64_t x);

// Seed of substream `index` of the stream rooted at `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Deterministic random stream. Every draw is defined in terms of raw 64-bit
// engine output, so results do not depend on the standard library's
// distribution implementations.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }

    // Independent substream; depends only on (seed, index), not on how many
    // draws this stream has made.
    RngStream split(std::uint64_t index) const { return RngStream(derive_seed(seed_, index)); }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1).
    double uniform_open() { return (static_cast<double>(engine_() >> 12) + 0.5) * 0x1.0p-52; }

    double normal();

    // Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);

    template <typename T>
    void shuffle(std::span<T> values)
    {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

inline RngStream seeded_rng(std::uint64_t seed) { return RngStream(seed); }

inline RngStream split(std::uint64_t seed, std::uint64_t index) { return RngStream(derive_seed(seed, index)); }

}  // namespace stackmc
