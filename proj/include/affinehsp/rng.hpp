#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace affinehsp {

/// Deterministic 64-bit stream (splitmix64). Every stochastic component of
/// the toolkit draws from one of these; reports echo the seed so runs can be
/// replayed bit-for-bit within this implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, n). Modulo bias is < 2^-48 for the n used here (n <= 2^16).
    std::size_t next_below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

    /// Splitting rule: trial stream = splitmix step of the master seed,
    /// xored with a splitmix step of (trial index ^ salt). Documented so a
    /// report's per-trial seeds can be reconstructed from the master seed.
    static Rng for_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
        Rng a(master_seed);
        Rng b(trial_index ^ 0xD1B54A32D192ED03ull);
        return Rng(a.next() ^ b.next());
    }

    /// Fisher-Yates, driven by this stream.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[next_below(i)]);
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace affinehsp
