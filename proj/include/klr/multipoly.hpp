/*
 * multipoly.hpp
 * -------------
 * Sparse multivariate polynomials over exact rationals.
 *
 * Variable universe: a VarTable declares m position variables x1..xm followed
 * by one parameter variable hbar[e] per quiver edge, in declaration order.
 * Exponent vectors index that order. Terms live in a map ordered by graded
 * lexicographic order, leading term first, so iteration order and the textual
 * form are deterministic. Every stored coefficient is nonzero.
 *
 * The grading doubles the naive total degree: deg x_k = deg hbar[e] = 2.
 *
 * Division is exact division (throws if the quotient does not exist); gcds
 * use content/primitive-part recursion on a shared variable with a primitive
 * pseudo-remainder sequence. Both are the workhorses of the reduced
 * rational-function layer and of the divided-difference operators.
 */
#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "klr/permutation.hpp"
#include "klr/rational.hpp"

namespace klr {

struct VarTable {
    int m = 0;                        // number of x variables
    std::vector<std::string> edges;   // hbar names, quiver edge declaration order

    int num_vars() const { return m + static_cast<int>(edges.size()); }
    int num_h() const { return static_cast<int>(edges.size()); }
    int x_index(int k) const { return k - 1; }       // x_k, 1-based k
    int h_index(int a) const { return m + a; }       // edge slot a, 0-based

    std::string name(int v) const {
        if (v < m) return "x" + std::to_string(v + 1);
        return "hbar[" + edges[v - m] + "]";
    }
};

using Mono = std::vector<int>;

inline int mono_total(const Mono& e) {
    int t = 0;
    for (int x : e) t += x;
    return t;
}

// Graded lexicographic, greater-first so map iteration starts at the leading
// term.
struct GradedLexGreater {
    bool operator()(const Mono& a, const Mono& b) const {
        int ta = mono_total(a), tb = mono_total(b);
        if (ta != tb) return ta > tb;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

class ExactDivisionError : public std::runtime_error {
  public:
    explicit ExactDivisionError(const std::string& what) : std::runtime_error(what) {}
};

class MultiPoly {
  public:
    using TermMap = std::map<Mono, Rational, GradedLexGreater>;

    MultiPoly() = default;
    explicit MultiPoly(int nvars) : nvars_(nvars) {}

    static MultiPoly constant(int nvars, const Rational& c) {
        MultiPoly p(nvars);
        if (!klr::is_zero(c)) p.terms_[Mono(nvars, 0)] = c;
        return p;
    }
    static MultiPoly variable(int nvars, int v, int power = 1) {
        MultiPoly p(nvars);
        Mono e(nvars, 0);
        e[v] = power;
        p.terms_[e] = Rational(1);
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    int num_terms() const { return static_cast<int>(terms_.size()); }
    const TermMap& terms() const { return terms_; }

    // Naive total degree; the grading degree is twice this for homogeneous
    // polynomials. Zero polynomial reports -1.
    int total_degree() const {
        int d = -1;
        for (auto& [e, c] : terms_) d = std::max(d, mono_total(e));
        return d;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        int d = mono_total(terms_.begin()->first);
        for (auto& [e, c] : terms_)
            if (mono_total(e) != d) return false;
        return true;
    }

    int degree_in(int v) const {
        int d = 0;
        for (auto& [e, c] : terms_) d = std::max(d, e[v]);
        return d;
    }

    bool is_constant() const { return total_degree() <= 0; }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw std::logic_error("constant_value on non-constant polynomial");
        return terms_.begin()->second;
    }

    const Mono& leading_mono() const {
        if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
        return terms_.begin()->first;
    }
    const Rational& leading_coeff() const {
        if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
        return terms_.begin()->second;
    }

    void add_term(const Mono& e, const Rational& c) {
        if (klr::is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (klr::is_zero(it->second)) terms_.erase(it);
        }
    }

    MultiPoly operator-() const {
        MultiPoly r(nvars_);
        for (auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        check_arity(o);
        for (auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        check_arity(o);
        for (auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_arity(b);
        MultiPoly r(a.nvars_);
        for (auto& [ea, ca] : a.terms_) {
            for (auto& [eb, cb] : b.terms_) {
                Mono e(a.nvars_);
                for (int v = 0; v < a.nvars_; ++v) e[v] = ea[v] + eb[v];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    MultiPoly scaled(const Rational& c) const {
        MultiPoly r(nvars_);
        if (klr::is_zero(c)) return r;
        for (auto& [e, k] : terms_) r.terms_[e] = k * c;
        return r;
    }

    MultiPoly pow(int n) const {
        MultiPoly r = constant(nvars_, Rational(1));
        for (int k = 0; k < n; ++k) r = r * *this;
        return r;
    }

    bool operator==(const MultiPoly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    // Point evaluation; point[v] is the value of variable v.
    Rational evaluate(const std::vector<Rational>& point) const {
        Rational acc(0);
        for (auto& [e, c] : terms_) {
            Rational t = c;
            for (int v = 0; v < nvars_; ++v)
                for (int k = 0; k < e[v]; ++k) t *= point[v];
            acc += t;
        }
        return acc;
    }

    // Substitute variable v by value, keeping the remaining variables.
    MultiPoly substitute(int v, const Rational& value) const {
        MultiPoly r(nvars_);
        for (auto& [e, c] : terms_) {
            Rational t = c;
            for (int k = 0; k < e[v]; ++k) t *= value;
            Mono e2 = e;
            e2[v] = 0;
            r.add_term(e2, t);
        }
        return r;
    }

  private:
    void check_arity(const MultiPoly& o) const {
        if (nvars_ != o.nvars_) throw std::logic_error("polynomial arity mismatch");
    }

    int nvars_ = 0;
    TermMap terms_;
};

// ---- term-order helpers ----------------------------------------------------

inline bool mono_divides(const Mono& a, const Mono& b) {
    for (std::size_t v = 0; v < a.size(); ++v)
        if (a[v] > b[v]) return false;
    return true;
}

// f / g when the quotient exists in the polynomial ring; throws otherwise.
// Single-divisor reduction: for exact multiples the leading term of g always
// divides the leading term of the running remainder, so the loop needs no
// remainder bucket.
inline MultiPoly exact_divide(const MultiPoly& f, const MultiPoly& g) {
    if (g.is_zero()) throw ExactDivisionError("division by zero polynomial");
    MultiPoly r = f;
    MultiPoly q(f.nvars());
    const Mono& gl = g.leading_mono();
    const Rational& gc = g.leading_coeff();
    while (!r.is_zero()) {
        const Mono& rl = r.leading_mono();
        if (!mono_divides(gl, rl)) throw ExactDivisionError("inexact polynomial division");
        Mono e(rl.size());
        for (std::size_t v = 0; v < rl.size(); ++v) e[v] = rl[v] - gl[v];
        Rational c = r.leading_coeff() / gc;
        MultiPoly t(f.nvars());
        t.add_term(e, c);
        q += t;
        r -= t * g;
    }
    return q;
}

// ---- symmetric group action and divided differences ------------------------

// (w.f)(x_1..x_m) = f(x_{w(1)}, ..., x_{w(m)}); hbar variables are fixed.
inline MultiPoly permute(const VarTable& vt, const Perm& w, const MultiPoly& f) {
    Perm wi = w.inverse();
    MultiPoly r(f.nvars());
    for (auto& [e, c] : f.terms()) {
        Mono e2 = e;
        for (int j = 1; j <= vt.m; ++j) e2[j - 1] = e[wi(j) - 1];
        r.add_term(e2, c);
    }
    return r;
}

// Divided difference on positions t, t+1: (s_t.f - f) / (x_t - x_{t+1}).
inline MultiPoly demazure(const VarTable& vt, int t, const MultiPoly& f) {
    MultiPoly num = permute(vt, Perm::simple(vt.m, t), f) - f;
    if (num.is_zero()) return MultiPoly(f.nvars());
    MultiPoly d = MultiPoly::variable(f.nvars(), vt.x_index(t)) -
                  MultiPoly::variable(f.nvars(), vt.x_index(t + 1));
    return exact_divide(num, d);
}

// ---- multivariate gcd -------------------------------------------------------

namespace detail {

// f as a univariate polynomial in variable v with MultiPoly coefficients.
inline std::map<int, MultiPoly> split_by(const MultiPoly& f, int v) {
    std::map<int, MultiPoly> out;
    for (auto& [e, c] : f.terms()) {
        Mono e2 = e;
        int d = e2[v];
        e2[v] = 0;
        auto it = out.find(d);
        if (it == out.end()) it = out.emplace(d, MultiPoly(f.nvars())).first;
        it->second.add_term(e2, c);
    }
    return out;
}

inline MultiPoly join_by(int nvars, int v, const std::map<int, MultiPoly>& coeffs) {
    MultiPoly out(nvars);
    for (auto& [d, p] : coeffs) {
        for (auto& [e, c] : p.terms()) {
            Mono e2 = e;
            e2[v] += d;
            out.add_term(e2, c);
        }
    }
    return out;
}

// True pseudo-remainder in the variable v: lc_v(g)^(deg_v f - deg_v g + 1) * f
// mod g. The exact power matters downstream: the subresultant sequence
// divides by predicted factors, which are only exact for the true prem.
inline MultiPoly pseudo_remainder(const MultiPoly& f, const MultiPoly& g, int v) {
    auto gc = split_by(g, v);
    int dg = gc.rbegin()->first;
    const MultiPoly& glc = gc.rbegin()->second;
    int df = f.degree_in(v);
    int steps_left = df - dg + 1;
    MultiPoly r = f;
    while (!r.is_zero()) {
        auto rc = split_by(r, v);
        int dr = rc.rbegin()->first;
        if (dr < dg) break;
        const MultiPoly& rlc = rc.rbegin()->second;
        // r <- glc*r - rlc*x_v^(dr-dg)*g
        MultiPoly shift = MultiPoly::variable(f.nvars(), v, dr - dg);
        r = glc * r - rlc * shift * g;
        --steps_left;
    }
    for (; steps_left > 0; --steps_left) r = glc * r;
    return r;
}

}  // namespace detail

MultiPoly gcd_poly(const MultiPoly& f, const MultiPoly& g);

namespace detail {

// gcd of the v-coefficients of f.
inline MultiPoly content_in(const MultiPoly& f, int v) {
    MultiPoly c(f.nvars());
    for (auto& [d, p] : split_by(f, v)) c = gcd_poly(c, p);
    return c;
}

}  // namespace detail

// Monic-normalized gcd (leading coefficient 1 in graded lex order).
// gcd(f, 0) = normalized f; gcd of two constants is 1.
inline MultiPoly gcd_poly(const MultiPoly& f, const MultiPoly& g) {
    auto normalize = [](const MultiPoly& p) {
        if (p.is_zero()) return p;
        return p.scaled(Rational(1) / p.leading_coeff());
    };
    if (f.is_zero()) return normalize(g);
    if (g.is_zero()) return normalize(f);
    if (f.is_constant() || g.is_constant())
        return MultiPoly::constant(f.nvars(), Rational(1));

    // A variable both sides depend on, of minimal combined degree; if none is
    // shared, a common divisor cannot involve the variables of either side's
    // exclusive support.
    int v = -1, best = 0;
    for (int u = 0; u < f.nvars(); ++u) {
        int df = f.degree_in(u), dg = g.degree_in(u);
        if (df > 0 && dg > 0) {
            int m = std::min(df, dg);
            if (v < 0 || m < best) v = u, best = m;
        }
    }
    if (v < 0) {
        for (int u = 0; u < f.nvars(); ++u) {
            if (f.degree_in(u) > 0 && g.degree_in(u) == 0)
                return gcd_poly(detail::content_in(f, u), g);
            if (g.degree_in(u) > 0 && f.degree_in(u) == 0)
                return gcd_poly(f, detail::content_in(g, u));
        }
        throw std::logic_error("unreachable: non-constant polynomials without variables");
    }

    MultiPoly cf = detail::content_in(f, v);
    MultiPoly cg = detail::content_in(g, v);
    MultiPoly c = gcd_poly(cf, cg);
    MultiPoly F = exact_divide(f, cf);
    MultiPoly G = exact_divide(g, cg);
    if (F.degree_in(v) < G.degree_in(v)) std::swap(F, G);
    // Subresultant pseudo-remainder sequence: the per-step divisors are the
    // predicted subresultant factors, so no content gcds are needed until the
    // final primitive-part extraction.
    MultiPoly one = MultiPoly::constant(f.nvars(), Rational(1));
    MultiPoly gg = one, hh = one;
    while (true) {
        int delta = F.degree_in(v) - G.degree_in(v);
        MultiPoly r = detail::pseudo_remainder(F, G, v);
        if (r.is_zero()) break;
        if (r.degree_in(v) == 0) return normalize(c);
        F = G;
        MultiPoly hpow = hh.pow(delta);
        G = exact_divide(r, gg * hpow);
        gg = detail::split_by(F, v).rbegin()->second;
        // h <- g^delta / h^(delta-1), exact by the subresultant theory.
        if (delta > 0) hh = exact_divide(gg.pow(delta), hh.pow(delta - 1));
    }
    G = exact_divide(G, detail::content_in(G, v));
    return normalize(c * G);
}

// ---- serialization ----------------------------------------------------------

// Canonical text form: terms in graded lex order, leading term first,
// e.g. "-2*x1^2*hbar[a] + x2"; unit coefficients are suppressed.
inline std::string to_string(const VarTable& vt, const MultiPoly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto& [e, c] : f.terms()) {
        Rational a = c;
        if (first) {
            if (sgn(a) < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += sgn(a) < 0 ? " - " : " + ";
            if (sgn(a) < 0) a = -a;
        }
        first = false;
        std::string mono;
        for (int v = 0; v < f.nvars(); ++v) {
            if (e[v] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vt.name(v);
            if (e[v] > 1) mono += "^" + std::to_string(e[v]);
        }
        if (mono.empty()) {
            out += to_string(a);
        } else if (a == Rational(1)) {
            out += mono;
        } else {
            out += to_string(a) + "*" + mono;
        }
    }
    return out;
}

}  // namespace klr
