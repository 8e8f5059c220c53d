#pragma once

#include <cstdint>
#include <limits>

namespace polygeom {

/// Seed used whenever the caller does not supply one.
inline constexpr std::uint64_t kDefaultSeed = 42;

/// SplitMix64 with deterministic stream splitting. Every random choice in
/// the library flows from one of these; there is no wall-clock entropy.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = kDefaultSeed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return next(); }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Independent child generator for sub-task `stream`.
    Rng split(std::uint64_t stream) const {
        Rng mixer(state_ ^ (0xD1B54A32D192ED03ULL * (stream + 1)));
        return Rng(mixer.next());
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next());
        const std::uint64_t limit = max() - max() % span;
        std::uint64_t r;
        do {
            r = next();
        } while (r >= limit);
        return lo + static_cast<std::int64_t>(r % span);
    }

private:
    std::uint64_t state_;
};

}  // namespace polygeom
