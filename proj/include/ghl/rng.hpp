#pragma once

#include <cmath>
#include <cstdint>

namespace ghl {

// Deterministic, platform-independent generator: xoshiro256++ seeded through
// splitmix64, with explicit variate transforms. std:: distributions are
// implementation-defined, which would break byte-identical outputs across
// standard libraries, so everything is spelled out here.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& w : state_) w = splitmix64(s);
    }

    // Independent substream derived from (seed, index); used to give each
    // simulation run or replicate its own generator regardless of thread
    // scheduling.
    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t s = seed + 0x632be59bd9b4e019ULL * (index + 1);
        std::uint64_t t = splitmix64(s);
        t ^= splitmix64(s);
        return Rng(t);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe as a log argument.
    double u01_pos() { return 1.0 - u01(); }

    double uniform(double a, double b) { return a + (b - a) * u01(); }

    double exponential() { return -std::log(u01_pos()); }

    // Poisson by recursive halving down to a mean where Knuth's product
    // method is exact in double precision. Sum of independent halves has the
    // right law and avoids exp underflow for large means.
    std::uint64_t poisson(double mean) {
        if (!(mean >= 0.0)) return 0;
        if (mean <= 30.0) return poisson_small(mean);
        return poisson(0.5 * mean) + poisson(0.5 * mean);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static std::uint64_t splitmix64(std::uint64_t& s) {
        std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t poisson_small(double mean) {
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double prod = u01_pos();
        while (prod > limit) {
            prod *= u01_pos();
            ++k;
        }
        return k;
    }

    std::uint64_t state_[4];
};

}  // namespace ghl
