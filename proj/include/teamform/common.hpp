#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace teamform {

/* Error type for all precondition, dimension and format violations. */
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

/* Dense row-major matrix of doubles, zero-initialized. */
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

    double& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

using Rng = std::mt19937_64;

/*
 * Hand-rolled draws instead of std::*_distribution: the standard leaves
 * distribution algorithms implementation-defined, and reproducibility of
 * seeded runs is part of this library's contract.
 */

/* Uniform double in [0, 1) from the top 53 bits of the generator. */
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_range(Rng& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

/* Uniform integer in [0, n). */
inline int uniform_int(Rng& rng, int n) {
    return static_cast<int>(rng() % static_cast<uint64_t>(n));
}

/* Poisson draw by Knuth's product-of-uniforms method (fine for small means). */
inline int poisson_draw(Rng& rng, double mean) {
    double limit = std::exp(-mean);
    double prod = 1.0;
    int count = -1;
    do {
        prod *= uniform01(rng);
        ++count;
    } while (prod > limit);
    return count;
}

/* Sample `count` distinct integers from [0, n) by partial Fisher-Yates. */
std::vector<int> sample_distinct(Rng& rng, int n, int count);

/* Format with 17 significant digits, enough to reparse the exact double. */
std::string format_full(double v);

}  // namespace teamform
