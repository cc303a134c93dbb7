#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace airec::rng {

/// splitmix64 step; used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic combination of a base seed and a stream tag (e.g. a user id).
inline std::uint64_t mix(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s ^= tag * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
    std::uint64_t b = splitmix64(s);
    return a ^ (b + 0x9e3779b97f4a7c15ULL);
}

/// mt19937_64 wrapped with hand-rolled value mappings. The engine itself is
/// pinned by the standard; the std distributions are not, so the mappings
/// here keep generated data identical across standard libraries.
class Engine {
public:
    explicit Engine(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Unbiased uniform draw from [0, n); n must be > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r;
        do {
            r = gen_();
        } while (r >= limit);
        return r % n;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Fair coin.
    bool coin() { return (gen_() & 1ULL) != 0; }

    /// Centered normal via Box-Muller; consumes two uniforms per call.
    double normal(double stddev) {
        double u1 = unit();
        double u2 = unit();
        while (u1 <= 0.0) u1 = unit();  // log(0) guard
        return stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// In-place Fisher-Yates shuffle.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace airec::rng
