#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "entmap/linalg.hpp"

namespace entmap {

/// splitmix64 mixing step. Used to derive independent per-state seeds from a
/// campaign seed so that sampling parallelizes and any sampled state can be
/// reconstructed from (seed, index) alone.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64(base ^ splitmix64(index + 1));
}

/// Deterministic random stream: mt19937_64 under the hood, uniforms mapped to
/// [0,1) with 53 bits, normals via Box-Muller. Same seed, same stream, on
/// every run; no hidden global state.
class Prng {
public:
    explicit Prng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform(); // (0,1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    complex cnormal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

    /// Complex Ginibre matrix: iid standard complex normal entries.
    CMatrix ginibre(std::size_t rows, std::size_t cols) {
        CMatrix g(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                g(i, j) = cnormal();
        return g;
    }

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace entmap
