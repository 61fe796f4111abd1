#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace sawtree {

// All randomness flows from one 64-bit seed. Substreams are derived by the
// documented rule in substream_seed(): FNV-1a of the label, mixed with the
// seed and stream index through splitmix64 steps. Uniform doubles come from
// the top 53 bits so results do not depend on std::uniform_real_distribution.

inline std::uint64_t splitmix64_step(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::string_view label,
                                    std::uint64_t index = 0) {
    std::uint64_t s = seed ^ fnv1a64(label);
    (void)splitmix64_step(s);
    s ^= index;
    return splitmix64_step(s);
}

class Rng {
public:
    explicit Rng(std::uint64_t engine_seed) : eng_(engine_seed) {}
    static Rng substream(std::uint64_t seed, std::string_view label, std::uint64_t index = 0) {
        return Rng(substream_seed(seed, label, index));
    }

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, 1), 53-bit resolution, engine-portable.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform in {0, ..., k-1}; rejection sampling keeps it exact.
    std::uint64_t uniform_int(std::uint64_t k) {
        const std::uint64_t limit = k ? (~std::uint64_t(0) - ~std::uint64_t(0) % k) : 0;
        for (;;) {
            std::uint64_t x = eng_();
            if (x < limit) return x % k;
        }
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace sawtree
