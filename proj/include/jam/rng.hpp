#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

namespace jam {

/// SplitMix64 finalizer; full avalanche on 64 bits.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Counter-based generator: the i-th output is a pure function of
/// (key, i), so a stream can be split into independent child streams
/// and replays identically no matter how work is scheduled over threads.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : key_(mix64(seed ^ 0x6a09e667f3bcc908ull)) {}

    /// Independent child stream; replica r of an ensemble uses split(r).
    Rng split(std::uint64_t stream) const {
        Rng child(0);
        child.key_ = mix64(key_ ^ mix64(stream + 0x5851f42d4c957f2dull));
        child.counter_ = 0;
        return child;
    }

    std::uint64_t next() { return mix64(key_ + 0x9e3779b97f4a7c15ull * counter_++); }

    /// Uniform in [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0,n), unbiased (rejection sampling).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
        const std::uint64_t rem = (0ull - n) % n;  // 2^64 mod n
        const std::uint64_t limit = 0ull - rem;    // largest multiple of n
        std::uint64_t r = next();
        while (limit != 0 && r >= limit) r = next();
        return r % n;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Categorical draw over integer weights: index i with probability
/// weights[i] / sum(weights). Exact (single unbiased integer draw).
inline std::size_t choose_weighted(Rng& rng, std::span<const long long> weights) {
    long long total = 0;
    for (long long w : weights) total += w;
    if (total <= 0) throw std::logic_error("choose_weighted: no positive weight");
    long long u = static_cast<long long>(rng.below(static_cast<std::uint64_t>(total)));
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (u < weights[i]) return i;
        u -= weights[i];
    }
    return weights.size() - 1;  // unreachable
}

}  // namespace jam
