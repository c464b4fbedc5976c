#pragma once
// Deterministic random generation for property checks and stress runs.
// All draws go through mt19937_64 with explicit seeding, so a fixed seed
// reproduces the same sequence on every platform.

#include "rational.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace jfx {

class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t bits() { return gen_(); }

    /// Uniform in [0, 1).  Built from the top 53 bits so the value stream is
    /// identical across standard library implementations.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi] inclusive, via rejection-free modulo over a
    /// 64-bit draw (bias < 2^-50 for the small ranges used here).
    uint64_t uniform_index(uint64_t lo, uint64_t hi) {
        return lo + gen_() % (hi - lo + 1);
    }

    bool coin() { return (gen_() & 1u) != 0; }

    /// Random rational with numerator in [-max_num, max_num] (never 0 unless
    /// allow_zero) and denominator in [1, max_den].
    Rational rational(int64_t max_num, int64_t max_den, bool allow_zero = true) {
        for (;;) {
            int64_t num = static_cast<int64_t>(uniform_index(0, 2 * max_num)) - max_num;
            if (num == 0 && !allow_zero)
                continue;
            int64_t den = static_cast<int64_t>(uniform_index(1, max_den));
            return Rational(num, den);
        }
    }

    /// k distinct interior grid points i/denom, 0 < i < denom, sorted.
    std::vector<Rational> interior_points(size_t k, int64_t denom) {
        if (k + 1 > static_cast<size_t>(denom))
            throw std::invalid_argument("interior_points: need k < denom");
        std::vector<int64_t> pool;
        pool.reserve(denom - 1);
        for (int64_t i = 1; i < denom; ++i)
            pool.push_back(i);
        // partial Fisher-Yates
        for (size_t i = 0; i < k; ++i) {
            size_t j = i + static_cast<size_t>(uniform_index(0, pool.size() - 1 - i));
            std::swap(pool[i], pool[j]);
        }
        std::vector<int64_t> chosen(pool.begin(), pool.begin() + k);
        std::sort(chosen.begin(), chosen.end());
        std::vector<Rational> out;
        out.reserve(k);
        for (int64_t i : chosen)
            out.emplace_back(i, denom);
        return out;
    }

    std::vector<double> vector(size_t n, double lo, double hi) {
        std::vector<double> v(n);
        for (auto& x : v)
            x = uniform(lo, hi);
        return v;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace jfx
