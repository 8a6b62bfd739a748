#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <vector>

namespace defsched {

// Deterministic random utilities. std::mt19937_64 is fully specified by the
// standard, but the standard *distributions* are not, so every mapping from
// raw bits to a value is done by hand here. Results are identical across
// compilers and platforms for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1), 53 bits of precision.
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [lo, hi], inclusive, bias-free via rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
        const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
        if (range == 0) return static_cast<std::int64_t>(engine_());  // full 64-bit span
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return lo + static_cast<std::int64_t>(x % range);
    }

    // Index drawn according to `probs` (need not be normalized).
    std::size_t pick_weighted(const std::vector<double>& probs) {
        double total = 0.0;
        for (double p : probs) {
            if (p < 0.0) throw std::invalid_argument("pick_weighted: negative weight");
            total += p;
        }
        if (total <= 0.0) throw std::invalid_argument("pick_weighted: zero total weight");
        double u = next_double() * total;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            u -= probs[i];
            if (u < 0.0) return i;
        }
        return probs.size() - 1;  // guard against accumulated rounding
    }

    // k distinct values from {0, .., n-1}, in draw order (partial Fisher-Yates).
    std::vector<int> sample_without_replacement(int n, int k) {
        if (k < 0 || k > n) throw std::invalid_argument("sample_without_replacement: k out of range");
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        std::vector<int> out(k);
        for (int i = 0; i < k; ++i) {
            const auto j = static_cast<std::size_t>(uniform_int(i, n - 1));
            std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
            out[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(i)];
        }
        return out;
    }

private:
    std::mt19937_64 engine_;
};

// SplitMix64 step; used only to derive independent substream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derive a substream seed from a master seed and an id path, e.g.
// derive_stream(seed, {kMemberAvailability, member, day}). Distinct paths give
// independent streams, so adding members never perturbs room draws and a
// (entity, day) pair always sees the same sequence for a given master seed.
inline std::uint64_t derive_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = seed ^ 0x6a09e667f3bcc909ULL;
    for (std::uint64_t id : path) {
        s ^= splitmix64(s) + id;
        s = splitmix64(s);
    }
    return splitmix64(s);
}

}  // namespace defsched
