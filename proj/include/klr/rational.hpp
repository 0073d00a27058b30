/*
 * rational.hpp
 * ------------
 * Exact rational scalars for the whole library.
 *
 * Coefficients are GMP rationals (mpq_class); every mpq_class held by the
 * library is kept in canonical form (reduced, positive denominator), which
 * GMP guarantees after canonicalize(). No floating point anywhere.
 */
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>

namespace klr {

using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

// Deterministic PRNG shared by every randomized component; a RunConfig seed
// fans out to independent streams by mixing a stream tag into the seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform integer in [lo, hi], as an exact rational.
    Rational integer(std::int64_t lo, std::int64_t hi) {
        std::uniform_int_distribution<std::int64_t> d(lo, hi);
        return Rational(mpz_class(static_cast<long>(d(engine_))));
    }

    std::uint64_t raw() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

}  // namespace klr
