#pragma once

#include <cmath>
#include <cstdint>

namespace enkfsmcs {

// splitmix64 finalizer; also used as the key-derivation hash for streams.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// xoshiro256++ stream, seeded from a 64-bit key via splitmix64.
//
// Every random draw in the toolkit comes from a stream derived from
// (seed, purpose, step, particle), so results do not depend on the
// order in which particles are processed.
class RngStream {
public:
    explicit RngStream(std::uint64_t key) {
        std::uint64_t st = key;
        for (auto& word : s_) word = splitmix64_next(st);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; the spare value is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] so log(u1) is finite.
        const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Role of a stream inside a run; keeps draws for different purposes independent.
enum class StreamPurpose : std::uint64_t {
    prior_draw = 1,
    kernel_noise = 2,
    obs_perturbation = 3,
    resample = 4,
    data_noise = 5,
};

inline RngStream make_stream(std::uint64_t seed, StreamPurpose purpose,
                             std::uint64_t step, std::uint64_t particle) {
    std::uint64_t h = seed;
    (void)splitmix64_next(h);
    h ^= static_cast<std::uint64_t>(purpose);
    (void)splitmix64_next(h);
    h ^= step;
    (void)splitmix64_next(h);
    h ^= particle;
    return RngStream(splitmix64_next(h));
}

} // namespace enkfsmcs
