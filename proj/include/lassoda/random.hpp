#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lassoda {

namespace detail {

// splitmix64 step, used only to spread user seeds into well-separated
// per-chain engine seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

// Seeded RNG stream. Each chain owns exactly one stream; nothing here is
// thread-safe and nothing needs to be.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    // Independent stream for chain index `chain` under a single user seed.
    static RandomStream for_chain(std::uint64_t seed, std::uint64_t chain) {
        std::uint64_t s = seed;
        detail::splitmix64(s);
        s ^= 0xd1b54a32d192ed03ULL * (chain + 1);
        return RandomStream(detail::splitmix64(s));
    }

    std::uint64_t raw() { return engine_(); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1).
    double uniform_pos() {
        double u;
        do {
            u = uniform();
        } while (u <= 0.0);
        return u;
    }

    // Standard normal, Box-Muller with one cached variate.
    double normal() {
        if (have_cache_) {
            have_cache_ = false;
            return cache_;
        }
        double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        double t = 2.0 * 3.14159265358979323846 * uniform();
        cache_ = r * std::sin(t);
        have_cache_ = true;
        return r * std::cos(t);
    }

    // Exponential with rate 1.
    double exponential() { return -std::log(uniform_pos()); }

private:
    std::mt19937_64 engine_;
    double cache_ = 0.0;
    bool have_cache_ = false;
};

}  // namespace lassoda
