#pragma once

#include <cstdint>

namespace qcover {

// Identifies one reproducible random stream. Streams derived from the same
// master seed but different indices are independent for our purposes, and a
// stream's output never depends on scheduling or on other streams.
struct RandomSource {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;

    RandomSource stream(std::uint64_t i) const { return {master_seed, stream_index * 0x9E3779B97F4A7C15ull + i + 1}; }
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}
}  // namespace detail

// xoshiro256** seeded via splitmix64. Self-contained so that every platform
// produces the same stream; std::uniform_int_distribution is unspecified
// across implementations, which would break replay tests.
class Rng {
public:
    explicit Rng(const RandomSource& src) {
        std::uint64_t seeder = src.master_seed;
        seeder ^= detail::splitmix64(seeder) + src.stream_index;
        for (auto& w : s_) w = detail::splitmix64(seeder);
    }

    std::uint64_t next_u64() {
        std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // One fair coin flip, amortized from a 64-bit pool.
    bool next_bit() {
        if (bits_left_ == 0) {
            bit_pool_ = next_u64();
            bits_left_ = 64;
        }
        bool b = bit_pool_ & 1;
        bit_pool_ >>= 1;
        --bits_left_;
        return b;
    }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        std::uint64_t threshold = (~n + 1) % n;  // 2^64 mod n
        while (true) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
    std::uint64_t bit_pool_ = 0;
    int bits_left_ = 0;
};

}  // namespace qcover
