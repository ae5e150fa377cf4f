#ifndef HGC_RNG_HPP
#define HGC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace hgc {

// splitmix64 finalizer; used both for seed derivation and for hashing
// heterogeneous values into sub-stream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return mix64(mix64(mix64(seed) ^ a) ^ b);
}

// Deterministic RNG with portable distributions. mt19937_64 output is
// specified by the standard; the std distributions are not, so uniform,
// bernoulli and binomial draws are implemented here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform() < p; }

    // uniform in [0, bound)
    std::uint64_t uniform_int(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("uniform_int: bound must be positive");
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = engine_();
            if (r >= threshold) return r % bound;
        }
    }

    // Binomial(count, p) by inversion. Large counts are split into chunks
    // whose (1-p)^chunk stays representable; a sum of binomials with the
    // same p is binomial in the total, so the split is exact.
    std::uint64_t binomial(std::uint64_t count, double p) {
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("binomial: p outside [0,1]");
        if (count == 0 || p == 0.0) return 0;
        if (p == 1.0) return count;
        const double log_q = std::log1p(-p);
        std::uint64_t chunk = static_cast<std::uint64_t>(-650.0 / log_q);
        if (chunk == 0) chunk = 1;
        std::uint64_t total = 0;
        while (count > 0) {
            const std::uint64_t m = count < chunk ? count : chunk;
            total += binomial_inversion(m, p);
            count -= m;
        }
        return total;
    }

private:
    std::uint64_t binomial_inversion(std::uint64_t n, double p) {
        const double q = 1.0 - p;
        double f = std::pow(q, static_cast<double>(n));  // P(X = 0)
        double cdf = f;
        const double u = uniform();
        std::uint64_t x = 0;
        while (u > cdf && x < n) {
            ++x;
            f *= (static_cast<double>(n - x + 1) / static_cast<double>(x)) * (p / q);
            cdf += f;
        }
        return x;
    }

    std::mt19937_64 engine_;
};

}  // namespace hgc

#endif
