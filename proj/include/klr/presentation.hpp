/*
 * presentation.hpp
 * ----------------
 * The quiver Hecke algebra attached to (quiver, root vector): generators,
 * formal words, structure polynomials, and the defining relation catalogue.
 *
 * A Model bundles the shared combinatorial context: the variable table
 * (x1..xm then hbar per edge), the lex-ordered color sequences I^alpha, and
 * the Cartan datum. Generators are tagged with the sequence they act on
 * (g e(nu) form): Idem(nu), X(k, nu), Tau(t, nu). Words multiply left to
 * right with the rightmost factor applied first; color-incompatible products
 * are the distinguished zero word. Elements are formal sums of words with
 * polynomial left coefficients; no rewriting ever happens here - both
 * realizations (operators on polynomials, fixed-point matrices) interpret
 * the same formal data.
 *
 * Structure polynomials, for a vertex i and positions a, b (1-based):
 *   P_i(x_a, x_b)    = prod over loops e at i of (x_a - x_b + hbar[e]);
 *   Q_{i,j}(x_a,x_b) = 0 if i = j, else
 *                      prod over edges e: i->j of (x_b - x_a + hbar[e])
 *                    * prod over edges e: j->i of (x_a - x_b + hbar[e]).
 * The braid correctors are the alternating sums of P-products divided by the
 * Vandermonde factors; divisibility is asserted, not assumed.
 *
 * Degrees: deg e(nu) = 0, deg x_k = 2, deg tau_t e(nu) = 2(loops(nu_t) - 1)
 * when nu_t = nu_{t+1} and 2 * mult(nu_t, nu_{t+1}) otherwise.
 */
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "klr/multipoly.hpp"
#include "klr/quiver.hpp"
#include "klr/ratfunc.hpp"

namespace klr {

class Model {
  public:
    Model(Quiver quiver, RootVector alpha, int cap = 8)
        : quiver_(std::move(quiver)),
          datum_(derive_datum(quiver_)),
          alpha_(std::move(alpha)),
          m_(alpha_.height()),
          seqs_(enumerate_sequences(alpha_, cap)) {
        vt_.m = m_;
        for (const Edge& e : quiver_.edges) vt_.edges.push_back(e.id);
    }

    const Quiver& quiver() const { return quiver_; }
    const CartanDatum& datum() const { return datum_; }
    const RootVector& alpha() const { return alpha_; }
    const VarTable& vars() const { return vt_; }
    int m() const { return m_; }
    int nvars() const { return vt_.num_vars(); }
    const std::vector<ColorSequence>& sequences() const { return seqs_; }
    const ColorSequence& base() const { return seqs_.front(); }

    int index_of(const ColorSequence& nu) const {
        for (std::size_t i = 0; i < seqs_.size(); ++i)
            if (seqs_[i] == nu) return static_cast<int>(i);
        throw std::logic_error("sequence not in I^alpha");
    }

    ColorSequence simple_swap(int t, const ColorSequence& nu) const {
        ColorSequence out = nu;
        std::swap(out[t - 1], out[t]);
        return out;
    }

    MultiPoly xvar(int k, int power = 1) const {
        return MultiPoly::variable(nvars(), vt_.x_index(k), power);
    }
    MultiPoly hvar(int edge) const { return MultiPoly::variable(nvars(), vt_.h_index(edge)); }
    MultiPoly constant(const Rational& c) const { return MultiPoly::constant(nvars(), c); }

    // P_i evaluated at positions (a, b).
    MultiPoly P(int i, int a, int b) const {
        MultiPoly p = constant(Rational(1));
        for (int e : quiver_.edges_between(i, i)) p *= xvar(a) - xvar(b) + hvar(e);
        return p;
    }

    // Q_{i,j} evaluated at positions (a, b); zero on the diagonal.
    MultiPoly Q(int i, int j, int a, int b) const {
        if (i == j) return MultiPoly(nvars());
        MultiPoly q = constant(Rational(1));
        for (int e : quiver_.edges_between(i, j)) q *= xvar(b) - xvar(a) + hvar(e);
        for (int e : quiver_.edges_between(j, i)) q *= xvar(a) - xvar(b) + hvar(e);
        if (quiver_.fault == Fault::q_sign) q = -q;
        return q;
    }

    // First braid corrector at positions (a, b, c); the quotient must clear
    // all three Vandermonde denominators.
    MultiPoly Pbar_prime(int i, int a, int b, int c) const {
        MultiPoly dab = xvar(a) - xvar(b), dac = xvar(a) - xvar(c), dbc = xvar(b) - xvar(c);
        RatFunc t1(P(i, b, a) * P(i, a, c), dab * dac);
        RatFunc t2(P(i, a, c) * P(i, b, c), dac * dbc);
        RatFunc t3(P(i, a, b) * P(i, b, c), dab * dbc);
        RatFunc sum = t1 + t2 - t3;
        if (!sum.is_polynomial()) throw std::logic_error("first corrector is not polynomial");
        return exact_divide(sum.num(), sum.den());
    }

    // Second braid corrector at positions (a, b, c).
    MultiPoly Pbar_second(int i, int a, int b, int c) const {
        MultiPoly dab = xvar(a) - xvar(b), dac = xvar(a) - xvar(c), dbc = xvar(b) - xvar(c);
        RatFunc t1(P(i, a, b) * P(i, a, c), dab * dac);
        RatFunc t2(P(i, a, c) * P(i, c, b), dac * dbc);
        RatFunc t3(P(i, a, b) * P(i, b, c), dab * dbc);
        RatFunc sum = -t1 - t2 + t3;
        if (!sum.is_polynomial()) throw std::logic_error("second corrector is not polynomial");
        return exact_divide(sum.num(), sum.den());
    }

    // (Q_{i,j}(x_a, x_b) - Q_{i,j}(x_c, x_b)) / (x_a - x_c).
    MultiPoly Qbar(int i, int j, int a, int b, int c) const {
        MultiPoly num = Q(i, j, a, b) - Q(i, j, c, b);
        if (num.is_zero()) return MultiPoly(nvars());
        return exact_divide(num, xvar(a) - xvar(c));
    }

  private:
    Quiver quiver_;
    CartanDatum datum_;
    RootVector alpha_;
    int m_;
    VarTable vt_;
    std::vector<ColorSequence> seqs_;
};

// ---- generators, words, elements --------------------------------------------

enum class GenKind { idem, x, tau };

struct Generator {
    GenKind kind;
    int index;          // k for x, t for tau, unused for idem
    ColorSequence nu;   // the sequence the generator acts on (right color)

    static Generator idem(ColorSequence nu) { return {GenKind::idem, 0, std::move(nu)}; }
    static Generator x(int k, ColorSequence nu) { return {GenKind::x, k, std::move(nu)}; }
    static Generator tau(int t, ColorSequence nu) { return {GenKind::tau, t, std::move(nu)}; }

    const ColorSequence& right_color() const { return nu; }
    ColorSequence left_color() const {
        if (kind != GenKind::tau) return nu;
        ColorSequence out = nu;
        std::swap(out[index - 1], out[index]);
        return out;
    }

    std::string to_string(const Quiver& q) const {
        auto colors = [&] {
            std::string s;
            for (int c : nu) {
                if (!s.empty()) s += ",";
                s += q.vertices[c];
            }
            return s;
        };
        switch (kind) {
            case GenKind::idem: return "e(" + colors() + ")";
            case GenKind::x: return "x" + std::to_string(index) + "(" + colors() + ")";
            case GenKind::tau: return "tau" + std::to_string(index) + "(" + colors() + ")";
        }
        return "";
    }
};

inline int generator_degree(const Model& model, const Generator& g) {
    switch (g.kind) {
        case GenKind::idem: return 0;
        case GenKind::x: return 2;
        case GenKind::tau: {
            int i = g.nu[g.index - 1], j = g.nu[g.index];
            if (i == j) return 2 * (model.datum().loops[i] - 1);
            return 2 * model.quiver().mult(i, j);
        }
    }
    return 0;
}

// Product of generators, leftmost factor first; the empty word is the unit.
// Factors are stored verbatim, color-incompatible products included: the
// realizations compute those to zero themselves, which is exactly what the
// orthogonality relations exercise. is_compatible() reports whether adjacent
// colors match; the distinguished zero word is a separate explicit state.
class GeneratorWord {
  public:
    GeneratorWord() = default;

    static GeneratorWord zero() {
        GeneratorWord w;
        w.zero_ = true;
        return w;
    }
    static GeneratorWord one() { return GeneratorWord(); }
    static GeneratorWord of(std::vector<Generator> factors) {
        GeneratorWord w;
        w.factors_ = std::move(factors);
        return w;
    }

    bool is_zero() const { return zero_; }
    bool is_one() const { return !zero_ && factors_.empty(); }
    const std::vector<Generator>& factors() const { return factors_; }

    bool is_compatible() const {
        if (zero_) return false;
        for (std::size_t i = 0; i + 1 < factors_.size(); ++i)
            if (factors_[i].right_color() != factors_[i + 1].left_color()) return false;
        return true;
    }

    // g * this.
    GeneratorWord compose_left(const Generator& g) const {
        if (zero_) return *this;
        GeneratorWord w = *this;
        w.factors_.insert(w.factors_.begin(), g);
        return w;
    }

    // this * w.
    GeneratorWord operator*(const GeneratorWord& o) const {
        if (zero_ || o.zero_) return zero();
        GeneratorWord w;
        w.factors_ = factors_;
        w.factors_.insert(w.factors_.end(), o.factors_.begin(), o.factors_.end());
        return w;
    }

    // Right (input) color, when the word constrains it.
    std::optional<ColorSequence> right_color() const {
        if (zero_ || factors_.empty()) return std::nullopt;
        return factors_.back().right_color();
    }
    std::optional<ColorSequence> left_color() const {
        if (zero_ || factors_.empty()) return std::nullopt;
        return factors_.front().left_color();
    }

    int degree(const Model& model) const {
        int d = 0;
        for (const Generator& g : factors_) d += generator_degree(model, g);
        return d;
    }

    std::string to_string(const Quiver& q) const {
        if (zero_) return "0";
        if (factors_.empty()) return "1";
        std::string s;
        for (const Generator& g : factors_) {
            if (!s.empty()) s += " ";
            s += g.to_string(q);
        }
        return s;
    }

    bool operator==(const GeneratorWord& o) const {
        if (zero_ != o.zero_) return false;
        if (factors_.size() != o.factors_.size()) return false;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (factors_[i].kind != o.factors_[i].kind) return false;
            if (factors_[i].index != o.factors_[i].index) return false;
            if (factors_[i].nu != o.factors_[i].nu) return false;
        }
        return true;
    }

  private:
    bool zero_ = false;
    std::vector<Generator> factors_;
};

// Formal sum of words with polynomial left coefficients. Kept formal: both
// realizations interpret terms independently, so no term combining is done.
struct AlgebraElement {
    struct Term {
        MultiPoly coeff;
        GeneratorWord word;
    };
    std::vector<Term> terms;

    static AlgebraElement zero() { return {}; }
    static AlgebraElement of(GeneratorWord w, MultiPoly coeff) {
        AlgebraElement e;
        if (!w.is_zero() && !coeff.is_zero()) e.terms.push_back({std::move(coeff), std::move(w)});
        return e;
    }
    static AlgebraElement of(const Model& model, GeneratorWord w) {
        return of(std::move(w), model.constant(Rational(1)));
    }

    AlgebraElement& add(GeneratorWord w, MultiPoly coeff) {
        if (!w.is_zero() && !coeff.is_zero()) terms.push_back({std::move(coeff), std::move(w)});
        return *this;
    }

    // Homogeneous total degree, or nullopt when mixed. Terms whose word is
    // color-incompatible represent zero and carry no degree constraint; an
    // element with no contributing term is homogeneous of degree 0 by
    // convention.
    std::optional<int> homogeneous_degree(const Model& model) const {
        std::optional<int> deg;
        bool any = false;
        for (const Term& t : terms) {
            if (!t.word.is_compatible()) continue;
            if (!t.coeff.is_homogeneous()) return std::nullopt;
            int d = 2 * std::max(t.coeff.total_degree(), 0) + t.word.degree(model);
            if (deg && *deg != d) return std::nullopt;
            deg = d;
            any = true;
        }
        return any ? deg : std::optional<int>(0);
    }
};

// ---- relation catalogue ------------------------------------------------------

struct RelationInstance {
    std::string family;   // idem | poly | r-e | r-distant | r2 | r-x | braid
    ColorSequence nu;     // sequence the instance is anchored at
    int t = 0;            // strand index for r2 / r-x / braid / r-e / r-distant
    int k = 0;            // secondary index (x position or second strand)
    AlgebraElement lhs;
    AlgebraElement rhs;
    std::string label;
};

// Every defining relation instance for the model, grouped by family in a
// deterministic order. Families:
//   idem      e(nu) e(nu') = delta e(nu), and sum_nu e(nu) = 1
//   poly      x_k e(nu) = e(nu) x_k, x_k x_l e(nu) = x_l x_k e(nu)
//   r-e       tau_t e(nu) = e(s_t nu) tau_t
//   r-distant tau_t tau_s e(nu) = tau_s tau_t e(nu) for |t - s| > 1
//   r2        tau_t^2 e(nu), split by nu_t = nu_{t+1} or not
//   r-x       tau_t x_k e(nu) - x_{s_t(k)} tau_t e(nu), split by k and colors
//   braid     tau_{t+1} tau_t tau_{t+1} e(nu) - tau_t tau_{t+1} tau_t e(nu)
inline std::vector<RelationInstance> relation_catalogue(const Model& model) {
    std::vector<RelationInstance> out;
    const auto& seqs = model.sequences();
    int m = model.m();
    auto one = [&](const GeneratorWord& w) { return AlgebraElement::of(model, w); };

    // idem: orthogonality.
    for (const ColorSequence& nu : seqs) {
        for (const ColorSequence& nu2 : seqs) {
            RelationInstance r;
            r.family = "idem";
            r.nu = nu2;
            r.lhs = one(GeneratorWord::of({Generator::idem(nu), Generator::idem(nu2)}));
            r.rhs = nu == nu2 ? one(GeneratorWord::of({Generator::idem(nu)}))
                              : AlgebraElement::zero();
            r.label = "e(nu) e(nu') = delta e(nu)";
            out.push_back(std::move(r));
        }
    }
    // idem: completeness.
    {
        RelationInstance r;
        r.family = "idem";
        r.nu = model.base();
        for (const ColorSequence& nu : seqs)
            r.lhs.add(GeneratorWord::of({Generator::idem(nu)}), model.constant(Rational(1)));
        r.rhs = one(GeneratorWord::one());
        r.label = "sum e(nu) = 1";
        out.push_back(std::move(r));
    }
    // poly: x commutes with idempotents and x's commute.
    for (const ColorSequence& nu : seqs) {
        for (int k = 1; k <= m; ++k) {
            RelationInstance r;
            r.family = "poly";
            r.nu = nu;
            r.k = k;
            r.lhs = one(GeneratorWord::of({Generator::x(k, nu)}));
            r.rhs = one(GeneratorWord::of({Generator::idem(nu), Generator::x(k, nu)}));
            r.label = "x_k e(nu) = e(nu) x_k";
            out.push_back(std::move(r));
            for (int l = k + 1; l <= m; ++l) {
                RelationInstance c;
                c.family = "poly";
                c.nu = nu;
                c.k = k;
                c.t = l;
                c.lhs = one(GeneratorWord::of({Generator::x(k, nu), Generator::x(l, nu)}));
                c.rhs = one(GeneratorWord::of({Generator::x(l, nu), Generator::x(k, nu)}));
                c.label = "x_k x_l = x_l x_k";
                out.push_back(std::move(c));
            }
        }
    }
    // r-e.
    for (const ColorSequence& nu : seqs) {
        for (int t = 1; t < m; ++t) {
            RelationInstance r;
            r.family = "r-e";
            r.nu = nu;
            r.t = t;
            r.lhs = one(GeneratorWord::of({Generator::tau(t, nu)}));
            r.rhs = one(GeneratorWord::of(
                {Generator::idem(model.simple_swap(t, nu)), Generator::tau(t, nu)}));
            r.label = "tau_t e(nu) = e(s_t nu) tau_t";
            out.push_back(std::move(r));
        }
    }
    // r-distant.
    for (const ColorSequence& nu : seqs) {
        for (int s = 1; s < m; ++s) {
            for (int t = s + 2; t < m; ++t) {
                RelationInstance r;
                r.family = "r-distant";
                r.nu = nu;
                r.t = t;
                r.k = s;
                ColorSequence snu = model.simple_swap(s, nu);
                ColorSequence tnu = model.simple_swap(t, nu);
                r.lhs = one(GeneratorWord::of({Generator::tau(t, snu), Generator::tau(s, nu)}));
                r.rhs = one(GeneratorWord::of({Generator::tau(s, tnu), Generator::tau(t, nu)}));
                r.label = "tau_t tau_s = tau_s tau_t";
                out.push_back(std::move(r));
            }
        }
    }
    // r2.
    for (const ColorSequence& nu : seqs) {
        for (int t = 1; t < m; ++t) {
            RelationInstance r;
            r.family = "r2";
            r.nu = nu;
            r.t = t;
            ColorSequence snu = model.simple_swap(t, nu);
            r.lhs = one(GeneratorWord::of({Generator::tau(t, snu), Generator::tau(t, nu)}));
            int i = nu[t - 1], j = nu[t];
            if (i == j) {
                MultiPoly dp = demazure(model.vars(), t, model.P(i, t, t + 1));
                r.rhs = AlgebraElement::of(GeneratorWord::of({Generator::tau(t, nu)}), dp);
            } else {
                r.rhs = AlgebraElement::of(GeneratorWord::of({Generator::idem(nu)}),
                                           model.Q(i, j, t, t + 1));
            }
            r.label = "tau_t^2 e(nu)";
            out.push_back(std::move(r));
        }
    }
    // r-x.
    for (const ColorSequence& nu : seqs) {
        for (int t = 1; t < m; ++t) {
            ColorSequence snu = model.simple_swap(t, nu);
            for (int k = 1; k <= m; ++k) {
                RelationInstance r;
                r.family = "r-x";
                r.nu = nu;
                r.t = t;
                r.k = k;
                int sk = k == t ? t + 1 : (k == t + 1 ? t : k);
                r.lhs = AlgebraElement::of(
                    GeneratorWord::of({Generator::tau(t, nu), Generator::x(k, nu)}),
                    model.constant(Rational(1)));
                r.lhs.add(GeneratorWord::of({Generator::x(sk, snu), Generator::tau(t, nu)}),
                          model.constant(Rational(-1)));
                int i = nu[t - 1], j = nu[t];
                if (i == j && k == t) {
                    r.rhs = AlgebraElement::of(GeneratorWord::of({Generator::idem(nu)}),
                                               -model.P(i, t, t + 1));
                } else if (i == j && k == t + 1) {
                    r.rhs = AlgebraElement::of(GeneratorWord::of({Generator::idem(nu)}),
                                               model.P(i, t, t + 1));
                } else {
                    r.rhs = AlgebraElement::zero();
                }
                r.label = "tau_t x_k - x_{s_t(k)} tau_t";
                out.push_back(std::move(r));
            }
        }
    }
    // braid.
    for (const ColorSequence& nu : seqs) {
        for (int t = 1; t + 1 < m; ++t) {
            RelationInstance r;
            r.family = "braid";
            r.nu = nu;
            r.t = t;
            ColorSequence nu_t1 = model.simple_swap(t + 1, nu);       // s_{t+1} nu
            ColorSequence nu_t = model.simple_swap(t, nu);            // s_t nu
            ColorSequence nu_t_t1 = model.simple_swap(t, nu_t1);      // s_t s_{t+1} nu
            ColorSequence nu_t1_t = model.simple_swap(t + 1, nu_t);   // s_{t+1} s_t nu
            r.lhs = AlgebraElement::of(
                GeneratorWord::of({Generator::tau(t + 1, nu_t_t1), Generator::tau(t, nu_t1),
                                   Generator::tau(t + 1, nu)}),
                model.constant(Rational(1)));
            r.lhs.add(GeneratorWord::of({Generator::tau(t, nu_t1_t), Generator::tau(t + 1, nu_t),
                                         Generator::tau(t, nu)}),
                      model.constant(Rational(-1)));
            int i = nu[t - 1], j = nu[t], l = nu[t + 1];
            if (i == l && i != j) {
                MultiPoly coeff = model.P(i, t, t + 2) * model.Qbar(i, j, t, t + 1, t + 2);
                r.rhs = AlgebraElement::of(GeneratorWord::of({Generator::idem(nu)}), coeff);
            } else if (i == j && j == l) {
                r.rhs = AlgebraElement::of(GeneratorWord::of({Generator::tau(t, nu)}),
                                           model.Pbar_prime(i, t, t + 1, t + 2));
                r.rhs.add(GeneratorWord::of({Generator::tau(t + 1, nu)}),
                          model.Pbar_second(i, t, t + 1, t + 2));
            } else {
                r.rhs = AlgebraElement::zero();
            }
            r.label = "braid residual";
            out.push_back(std::move(r));
        }
    }
    return out;
}

}  // namespace klr
