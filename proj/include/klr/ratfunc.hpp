/*
 * ratfunc.hpp
 * -----------
 * Reduced rational functions over the polynomial engine.
 *
 * Invariants: the denominator is nonzero, gcd(num, den) = 1, and the
 * denominator's leading coefficient (graded lex) is 1, so structural equality
 * is semantic equality. Arithmetic reduces through cross-gcds before
 * multiplying out.
 */
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "klr/multipoly.hpp"
#include "klr/rational.hpp"

namespace klr {

class EvalDivideByZero : public std::runtime_error {
  public:
    EvalDivideByZero() : std::runtime_error("denominator vanishes at evaluation point") {}
};

class RatFunc {
  public:
    RatFunc() : num_(0), den_(MultiPoly::constant(0, Rational(1))) {}
    explicit RatFunc(MultiPoly num)
        : num_(std::move(num)), den_(MultiPoly::constant(num_.nvars(), Rational(1))) {}
    RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
        reduce();
    }

    static RatFunc constant(int nvars, const Rational& c) {
        return RatFunc(MultiPoly::constant(nvars, c));
    }

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    int nvars() const { return den_.nvars(); }

    bool is_polynomial() const { return den_.is_constant(); }

    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        MultiPoly g = gcd_poly(a.den_, b.den_);
        MultiPoly da = exact_divide(a.den_, g);
        MultiPoly db = exact_divide(b.den_, g);
        return RatFunc(a.num_ * db + b.num_ * da, da * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return RatFunc(MultiPoly(a.nvars()));
        MultiPoly g1 = gcd_poly(a.num_, b.den_);
        MultiPoly g2 = gcd_poly(b.num_, a.den_);
        RatFunc r;
        r.num_ = exact_divide(a.num_, g1) * exact_divide(b.num_, g2);
        r.den_ = exact_divide(a.den_, g2) * exact_divide(b.den_, g1);
        r.normalize_den();
        return r;
    }

    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw std::domain_error("division by zero rational function");
        RatFunc bi;
        bi.num_ = b.den_;
        bi.den_ = b.num_;
        bi.normalize_den();
        return a * bi;
    }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    Rational evaluate(const std::vector<Rational>& point) const {
        Rational d = den_.evaluate(point);
        if (klr::is_zero(d)) throw EvalDivideByZero();
        return num_.evaluate(point) / d;
    }

    // Degree bound used by the randomized-identity failure estimate.
    int degree_bound() const {
        return std::max(num_.total_degree(), 0) + std::max(den_.total_degree(), 0);
    }

  private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = MultiPoly::constant(den_.nvars(), Rational(1));
            return;
        }
        MultiPoly g = gcd_poly(num_, den_);
        if (!g.is_constant()) {
            num_ = exact_divide(num_, g);
            den_ = exact_divide(den_, g);
        }
        normalize_den();
    }

    void normalize_den() {
        if (num_.is_zero()) {
            den_ = MultiPoly::constant(den_.nvars(), Rational(1));
            return;
        }
        Rational lc = den_.leading_coeff();
        if (lc != Rational(1)) {
            den_ = den_.scaled(Rational(1) / lc);
            num_ = num_.scaled(Rational(1) / lc);
        }
    }

    MultiPoly num_, den_;
};

inline std::string to_string(const VarTable& vt, const RatFunc& f) {
    if (f.is_polynomial()) return to_string(vt, f.num());
    return "(" + to_string(vt, f.num()) + ") / (" + to_string(vt, f.den()) + ")";
}

}  // namespace klr
