#ifndef PIPEROUTE_RNG_HPP
#define PIPEROUTE_RNG_HPP

#include <cstdint>

namespace piperoute {

// Portable deterministic generator: xoshiro256** seeded through splitmix64.
// Used instead of <random> engines/distributions so that identically seeded
// runs are byte-reproducible across platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& w : state_) w = splitmix64(x);
    }

    std::uint64_t next_u64() {
        std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, n). Unbiased via rejection on the top multiple of n.
    std::uint64_t next_below(std::uint64_t n) {
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double next_double(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Mixes extra words into a seed; used to derive per-instance streams.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
        std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL + salt);
        std::uint64_t a = splitmix64(x);
        std::uint64_t b = splitmix64(x);
        return a ^ rotl(b, 32);
    }

private:
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    std::uint64_t state_[4];
};

} // namespace piperoute

#endif
