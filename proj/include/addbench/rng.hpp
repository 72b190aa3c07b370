#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <stdexcept>

namespace addbench {

// One step of the splitmix64 mixer. Used for seed derivation only; the
// actual stream comes from mt19937_64, whose sequence is pinned by the
// standard and therefore identical across platforms.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Hierarchical seed derivation: each key opens an independent child stream.
// derive_seed(m, {a}) and derive_seed(m, {a, b}) are unrelated streams, so
// suites stay comparable when counts change.
inline std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> keys) {
    std::uint64_t h = splitmix64(root);
    for (std::uint64_t k : keys) {
        h = splitmix64(h ^ splitmix64(k + 0x9E3779B97F4A7C15ULL));
    }
    return h;
}

// Deterministic random source. std::random distributions are not portable
// across standard libraries, so all bounded draws are implemented here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Unbiased integer in [0, bound) via rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % bound;
    }

    int range_int(int lo, int hi) {  // inclusive
        if (lo > hi) throw std::invalid_argument("Rng::range_int: empty range");
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    // Uniform in [0, 1) with 53 bits.
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return unit() < p;
    }

    // Index draw proportional to nonnegative weights.
    std::size_t weighted(std::span<const double> weights) {
        double total = 0.0;
        for (double w : weights) {
            if (w < 0.0) throw std::invalid_argument("Rng::weighted: negative weight");
            total += w;
        }
        if (total <= 0.0) throw std::invalid_argument("Rng::weighted: all weights zero");
        double u = unit() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            acc += weights[i];
            if (u < acc) return i;
        }
        return weights.size() - 1;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace addbench
