#pragma once

#include <cstdint>
#include <vector>

namespace pplab {

// SplitMix64-based generator. We roll our own so that seeded suites produce
// identical streams on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), n > 0. Modulo bias is irrelevant at desk scale.
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

    // Uniform in [lo, hi] inclusive.
    int range(int lo, int hi) { return lo + below(hi - lo + 1); }

    bool coin() { return (next() & 1) != 0; }

    // Random subset of {0, ..., n-1} where each element is kept with prob ~1/2.
    std::vector<int> subset(int n) {
        std::vector<int> out;
        for (int i = 0; i < n; ++i)
            if (coin()) out.push_back(i);
        return out;
    }

    std::vector<int> permutation(int n) {
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) p[i] = i;
        for (int i = n - 1; i > 0; --i) std::swap(p[i], p[below(i + 1)]);
        return p;
    }

private:
    std::uint64_t state_;
};

} // namespace pplab
