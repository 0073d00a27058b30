/*
 * linalg.hpp
 * ----------
 * Exact dense linear algebra over the rationals: Gaussian elimination rank,
 * row-span membership, and small helpers. Rows are plain vectors; matrices
 * are row lists.
 *
 * Rational elimination suffers from coefficient growth on larger stacks, so
 * rank queries that only need to certify "full rank" go through a mod-p
 * elimination first: the rank mod p never exceeds the rational rank, so
 * reaching a known upper bound mod p settles the question exactly and the
 * mpq path is kept as the fallback verdict.
 */
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "klr/rational.hpp"

namespace klr {

using DenseRow = std::vector<Rational>;
using DenseMatrix = std::vector<DenseRow>;

// A denominator reduced to zero mod the working prime; the caller switches
// to a different prime.
class EvalModuloCollision : public std::runtime_error {
  public:
    EvalModuloCollision() : std::runtime_error("denominator vanishes mod the working prime") {}
};

namespace detail {

// Reduce `row` against the pivot rows of an eliminated matrix in place.
// `pivots[r]` is the pivot column of eliminated row r.
inline void reduce_row(DenseRow& row, const DenseMatrix& rows, const std::vector<int>& pivots) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
        int c = pivots[r];
        if (is_zero(row[c])) continue;
        Rational factor = row[c] / rows[r][c];
        for (std::size_t k = c; k < row.size(); ++k) row[k] -= factor * rows[r][k];
    }
}

}  // namespace detail

// Incremental row-reduction workspace: feed rows, read off the rank, and ask
// whether a row lies in the span of what has been fed so far.
class RowSpan {
  public:
    explicit RowSpan(int ncols) : ncols_(ncols) {}

    // Returns true when the row enlarged the span.
    bool add(DenseRow row) {
        detail::reduce_row(row, rows_, pivots_);
        int pivot = -1;
        for (int c = 0; c < ncols_; ++c) {
            if (!is_zero(row[c])) {
                pivot = c;
                break;
            }
        }
        if (pivot < 0) return false;
        rows_.push_back(std::move(row));
        pivots_.push_back(pivot);
        return true;
    }

    bool contains(DenseRow row) const {
        detail::reduce_row(row, rows_, pivots_);
        for (const Rational& v : row)
            if (!is_zero(v)) return false;
        return true;
    }

    int rank() const { return static_cast<int>(rows_.size()); }
    int ncols() const { return ncols_; }

  private:
    int ncols_;
    DenseMatrix rows_;
    std::vector<int> pivots_;
};

inline int matrix_rank(const DenseMatrix& m) {
    if (m.empty()) return 0;
    RowSpan span(static_cast<int>(m[0].size()));
    for (const DenseRow& row : m) span.add(row);
    return span.rank();
}

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mulmod(a, a, p))
        if (e & 1) r = mulmod(r, a, p);
    return r;
}

// Inverse mod a prime via Fermat.
inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

inline std::uint64_t residue(const Rational& x, std::uint64_t p) {
    std::uint64_t num = mpz_fdiv_ui(x.get_num().get_mpz_t(), p);
    std::uint64_t den = mpz_fdiv_ui(x.get_den().get_mpz_t(), p);
    if (den == 0) throw EvalModuloCollision();
    return mulmod(num, invmod(den, p), p);
}

}  // namespace detail

// Rank of the matrix reduced mod a prime below 2^63: never exceeds the
// rational rank. Returns -1 when some denominator is divisible by p, in
// which case the reduction is meaningless and another prime must be tried.
inline int rank_mod_prime(const DenseMatrix& m, std::uint64_t p) {
    if (m.empty()) return 0;
    std::size_t ncols = m[0].size();
    std::vector<std::vector<std::uint64_t>> rows;
    rows.reserve(m.size());
    try {
        for (const DenseRow& row : m) {
            std::vector<std::uint64_t> r(ncols);
            for (std::size_t c = 0; c < ncols; ++c) r[c] = detail::residue(row[c], p);
            rows.push_back(std::move(r));
        }
    } catch (const EvalModuloCollision&) {
        return -1;
    }
    int rank = 0;
    for (std::size_t c = 0; c < ncols && rank < static_cast<int>(rows.size()); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        std::uint64_t inv = detail::invmod(rows[rank][c], p);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][c] == 0) continue;
            std::uint64_t f = detail::mulmod(rows[r][c], inv, p);
            for (std::size_t k = c; k < ncols; ++k) {
                std::uint64_t sub = detail::mulmod(f, rows[rank][k], p);
                rows[r][k] = rows[r][k] >= sub ? rows[r][k] - sub : rows[r][k] + p - sub;
            }
        }
        ++rank;
    }
    return rank;
}

// Modular rank as a cheap lower bound for the rational rank; -1 when every
// candidate prime collides with a denominator (practically unreachable).
inline int modular_rank_bound(const DenseMatrix& m) {
    static constexpr std::uint64_t primes[] = {2305843009213693951ull,   // 2^61 - 1
                                               9223372036854775783ull,   // largest < 2^63
                                               1000000007ull};
    for (std::uint64_t p : primes) {
        int r = rank_mod_prime(m, p);
        if (r >= 0) return r;
    }
    return -1;
}

// Exact rank, certified cheaply when it reaches a caller-known upper bound:
// a modular rank equal to `upper` pins the rational rank, and anything else
// falls back to rational elimination for the exact verdict.
inline int rank_bounded_above(const DenseMatrix& m, long upper) {
    int r = modular_rank_bound(m);
    if (r >= 0 && r == upper) return r;
    return matrix_rank(m);
}

}  // namespace klr
