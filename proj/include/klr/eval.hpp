/*
 * eval.hpp
 * --------
 * Random evaluation points for the randomized identity backend.
 *
 * A point assigns an integer rational drawn uniformly from [-2^31, 2^31] to
 * every variable of a VarTable. Identity checks share one tuple of points
 * across both sides; any vanishing denominator aborts the attempt and the
 * whole point is redrawn (bounded retries).
 */
#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "klr/multipoly.hpp"
#include "klr/rational.hpp"
#include "klr/ratfunc.hpp"

namespace klr {

using EvalPoint = std::vector<Rational>;

inline constexpr std::int64_t kEvalWindowLo = -(std::int64_t(1) << 31);
inline constexpr std::int64_t kEvalWindowHi = (std::int64_t(1) << 31);

inline EvalPoint sample_point(const VarTable& vt, Rng& rng) {
    EvalPoint p(vt.num_vars());
    for (auto& v : p) v = rng.integer(kEvalWindowLo, kEvalWindowHi);
    return p;
}

// Runs body(point) and redraws the point while it signals a vanishing
// denominator. Used so that zero sets of the Euler factors never bias a
// randomized check.
template <class F>
auto with_resampling(const VarTable& vt, Rng& rng, F&& body, int max_attempts = 64) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        EvalPoint p = sample_point(vt, rng);
        try {
            return body(p);
        } catch (const EvalDivideByZero&) {
            continue;
        }
    }
    throw std::runtime_error("could not find a non-degenerate evaluation point");
}

}  // namespace klr
