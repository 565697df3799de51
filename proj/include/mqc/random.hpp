#pragma once

#include "mqc/graded_poly.hpp"

#include <cstdint>
#include <random>

namespace mqc {

/// Seeded generator whose output depends only on the seed: it draws raw
/// mt19937_64 words and reduces them itself instead of using std distributions,
/// whose algorithms differ between standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform-enough integer in [lo, hi].
    long between(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    bool coin() { return next() & 1U; }
    Rational small_rational(long bound = 5) {
        long num = between(-bound, bound);
        long den = between(1, bound);
        return Rational(num, den);
    }

private:
    std::mt19937_64 engine_;
};

/// Random element of `ring` with at most `terms` terms and small rational coefficients.
GradedPoly random_poly(Rng& rng, const RingPtr& ring, int terms);

} // namespace mqc
