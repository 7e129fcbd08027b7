#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace nilnike {

// Name and version of the PRNG stream. Transcripts promise bit-identical
// regeneration from a 64-bit seed, so the generator is pinned here and must
// not change without bumping the version.
inline constexpr const char* kRngName = "nilnike-xoshiro256ss-v1";

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
} // namespace detail

// xoshiro256** seeded through splitmix64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = detail::splitmix64(sm);
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Independent stream for worker `index` (e.g. one per bench grid point).
    Rng fork(std::uint64_t index) const {
        std::uint64_t sm = seed_ ^ (0x6a09e667f3bcc909ULL + index);
        std::uint64_t derived = detail::splitmix64(sm);
        return Rng(derived ^ detail::splitmix64(sm));
    }

    // Uniform integer in [0, bound), bound >= 1. Rejection sampling over the
    // minimal number of 64-bit words keeps the stream consumption canonical.
    mpz_class below(const mpz_class& bound) {
        if (bound <= 0) return 0;
        if (bound == 1) return 0;
        const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
        const std::size_t words = (bits + 63) / 64;
        const unsigned top_bits = static_cast<unsigned>(bits - 64 * (words - 1));
        std::vector<std::uint64_t> buf(words);
        for (;;) {
            for (auto& w : buf) w = next();
            if (top_bits < 64) buf[0] &= (std::uint64_t{1} << top_bits) - 1;
            mpz_class x;
            mpz_import(x.get_mpz_t(), buf.size(), 1 /*big-endian words*/, sizeof(std::uint64_t),
                       0, 0, buf.data());
            if (x < bound) return x;
        }
    }

    // Uniform in [1, bound) with gcd(x, p) = 1.
    mpz_class unit_below(const mpz_class& bound, const mpz_class& p) {
        for (;;) {
            mpz_class x = below(bound);
            if (x == 0) continue;
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
            if (g == 1) return x;
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t seed_;
    std::uint64_t state_[4]{};
};

} // namespace nilnike
