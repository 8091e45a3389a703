#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace anonqtx {

// splitmix64 finalizer; the mixing primitive behind stream derivation.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic random stream over std::mt19937_64 (whose output sequence is
// fixed by the standard). Floating-point and integer draws are implemented
// here rather than via std::*_distribution so the value stream is
// reproducible across standard libraries.
//
// Stream splitting: a stream keyed K and a list of labels l1..lk derive a
// child keyed  mix64(...mix64(mix64(K ^ l1) ^ l2)... ^ lk).  Protocol code
// keys every independent consumer as (seed, trial, participant, round,
// purpose), so draw order in one stream never shifts values in another.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t key) : key_(key), engine_(key) {}

    std::uint64_t key() const { return key_; }

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0,1), 53-bit resolution
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // true with probability p; consumes exactly one draw
    bool bernoulli(double p) { return uniform() < p; }

    // uniform integer in [0, n); multiply-shift reduction, one draw
    std::uint64_t bounded(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // standard normal via Box-Muller; consumes two draws
    double gaussian() {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    RandomStream derive(std::initializer_list<std::uint64_t> labels) const {
        std::uint64_t k = key_;
        for (std::uint64_t l : labels) k = mix64(k ^ l);
        return RandomStream(k);
    }

private:
    std::uint64_t key_;
    std::mt19937_64 engine_;
};

}  // namespace anonqtx
