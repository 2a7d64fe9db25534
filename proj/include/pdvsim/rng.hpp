#ifndef PDVSIM_RNG_HPP
#define PDVSIM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <string_view>

namespace pdvsim {

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// xoshiro256++ seeded from (seed, stream_id) through splitmix64. Streams are
// independent per traffic source: adding a source never perturbs the draws
// of another.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::string_view stream_id)
        : RngStream(seed, fnv1a64(stream_id)) {}

    RngStream(std::uint64_t seed, std::uint64_t stream_hash) {
        std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ull + stream_hash);
        for (auto& w : state_) w = splitmix64(x);
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

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double exponential(double mean) { return -mean * std::log1p(-next_double()); }

    bool bernoulli(double p) { return next_double() < p; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_[4];
};

} // namespace pdvsim

#endif
