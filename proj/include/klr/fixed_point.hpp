/*
 * fixed_point.hpp
 * ---------------
 * The localization model: flags are permutations of the m marked points, and
 * algebra elements become matrices indexed by flags, with entries rational
 * in the equivariant characters chi_1..chi_m and the edge parameters hbar.
 *
 * For a flag w carrying the color sequence nu_w = w^{-1} . base:
 *   euler_flag(w)  = prod over pairs k < k' with equal colors of
 *                    (chi_{w(k')} - chi_{w(k)});
 *   euler_fiber(w) = prod over pairs k > k' and edges e: (nu_w)_k -> (nu_w)_k'
 *                    of (chi_{w(k')} - chi_{w(k)} + hbar[e]);
 *   lambda(w)      = euler_flag(w) * euler_fiber(w),
 * the Euler class of the tangent space at the fixed point w.
 *
 * Generators act by sparse matrices (columns indexed by flags):
 *   e(nu)    identity on the block { w : nu_w = nu };
 *   x_k(nu)  diagonal chi_{w(k)} on that block;
 *   tau_j(nu), column w in the block, with delta = chi_{w(j)} - chi_{w(j+1)}:
 *     distinct colors: row w s_j gets
 *         prod over edges e: nu_{j+1} -> nu_j of (delta + hbar[e]);
 *     equal colors: row w gets -prod over loops e (delta + hbar[e]) / delta,
 *                   row w s_j gets +prod over loops e (delta + hbar[e]) / delta.
 * Those entries are the pairwise Euler classes of the elementary correspondence
 * divided by lambda; lambda_sj_direct computes the same classes from the full
 * product formula so the two routes can be compared factor by factor.
 *
 * psi sends the polynomial vector f e(nu) to the coordinate vector
 * (w f)(chi) / lambda(w) over the block of nu; it intertwines the polynomial
 * action with the matrix action, which is the content of the coincidence
 * check between the two realizations.
 *
 * The scalar type is pluggable: ExactScalars works in the fraction field
 * (RatFunc), NumericScalars works at a sampled rational point and throws
 * EvalDivideByZero on vanishing denominators so callers can resample.
 * UnreducedScalars also works in the fraction field but never reduces:
 * equality is decided by cross-multiplication, which keeps relation checks
 * free of multivariate gcds at the cost of unnormalized intermediates.
 */
#pragma once

#include <map>
#include <string>
#include <vector>

#include "klr/eval.hpp"
#include "klr/permutation.hpp"
#include "klr/polynomial_rep.hpp"
#include "klr/presentation.hpp"
#include "klr/ratfunc.hpp"

namespace klr {

inline bool scalar_is_zero(const Rational& a) { return is_zero(a); }
inline bool scalar_is_zero(const RatFunc& a) { return a.is_zero(); }

// Fraction that is never reduced. The denominator is a product of the
// structured factors it was built from, so it is nonzero by construction;
// the numerator is canonical (expanded, sorted terms), so is_zero and the
// cross-multiplied equality below are exact.
class UnreducedFrac {
  public:
    UnreducedFrac() : num_(0), den_(MultiPoly::constant(0, Rational(1))) {}
    explicit UnreducedFrac(MultiPoly num)
        : num_(std::move(num)), den_(MultiPoly::constant(num_.nvars(), Rational(1))) {}
    UnreducedFrac(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("fraction with zero denominator");
    }

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    UnreducedFrac operator-() const {
        UnreducedFrac r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend UnreducedFrac operator+(const UnreducedFrac& a, const UnreducedFrac& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return UnreducedFrac(a.num_ + b.num_, a.den_);
        return UnreducedFrac(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend UnreducedFrac operator-(const UnreducedFrac& a, const UnreducedFrac& b) {
        return a + (-b);
    }

    friend UnreducedFrac operator*(const UnreducedFrac& a, const UnreducedFrac& b) {
        if (a.is_zero()) return a;
        if (b.is_zero()) return b;
        return UnreducedFrac(a.num_ * b.num_, a.den_ * b.den_);
    }

    UnreducedFrac& operator+=(const UnreducedFrac& o) { return *this = *this + o; }
    UnreducedFrac& operator-=(const UnreducedFrac& o) { return *this = *this - o; }
    UnreducedFrac& operator*=(const UnreducedFrac& o) { return *this = *this * o; }

    bool operator==(const UnreducedFrac& o) const {
        if (num_.is_zero() || o.num_.is_zero()) return num_.is_zero() && o.num_.is_zero();
        if (den_ == o.den_) return num_ == o.num_;
        return num_ * o.den_ == o.num_ * den_;
    }
    bool operator!=(const UnreducedFrac& o) const { return !(*this == o); }

  private:
    MultiPoly num_, den_;
};

inline bool scalar_is_zero(const UnreducedFrac& a) { return a.is_zero(); }

// Scalars in the fraction field of the polynomial ring of the model.
class ExactScalars {
  public:
    using K = RatFunc;
    explicit ExactScalars(const Model& model) : model_(&model) {}
    K chi(int k) const { return K(model_->xvar(k)); }
    K hbar(int e) const { return K(model_->hvar(e)); }
    K of_int(long c) const { return K(model_->constant(Rational(c))); }
    K of_poly(const MultiPoly& f) const { return K(f); }
    K div(const K& a, const K& b) const { return a / b; }

  private:
    const Model* model_;
};

// Scalars in the fraction field, held unreduced. Suited to equality checks
// of short products (relation verification), where cross-multiplication is
// far cheaper than keeping every intermediate in lowest terms.
class UnreducedScalars {
  public:
    using K = UnreducedFrac;
    explicit UnreducedScalars(const Model& model) : model_(&model) {}
    K chi(int k) const { return K(model_->xvar(k)); }
    K hbar(int e) const { return K(model_->hvar(e)); }
    K of_int(long c) const { return K(model_->constant(Rational(c))); }
    K of_poly(const MultiPoly& f) const { return K(f); }
    K div(const K& a, const K& b) const {
        if (b.is_zero()) throw std::domain_error("division by zero fraction");
        return K(a.num() * b.den(), a.den() * b.num());
    }

  private:
    const Model* model_;
};

// Scalars evaluated at one rational point (chi values then hbar values, in
// variable-table order). Division by zero throws so callers can resample.
class NumericScalars {
  public:
    using K = Rational;
    NumericScalars(const Model& model, EvalPoint point)
        : model_(&model), point_(std::move(point)) {}
    K chi(int k) const { return point_[model_->vars().x_index(k)]; }
    K hbar(int e) const { return point_[model_->vars().h_index(e)]; }
    K of_int(long c) const { return Rational(c); }
    K of_poly(const MultiPoly& f) const { return f.evaluate(point_); }
    K div(const K& a, const K& b) const {
        if (is_zero(b)) throw EvalDivideByZero();
        return a / b;
    }

  private:
    const Model* model_;
    EvalPoint point_;
};

// Column-major sparse matrix: mat[c] maps row -> value, zero entries absent.
template <typename K>
using SparseMat = std::vector<std::map<int, K>>;

template <typename K>
void sparse_add_at(SparseMat<K>& m, int row, int col, const K& v) {
    if (scalar_is_zero(v)) return;
    auto it = m[col].find(row);
    if (it == m[col].end()) {
        m[col][row] = v;
    } else {
        it->second += v;
        if (scalar_is_zero(it->second)) m[col].erase(it);
    }
}

template <typename K>
SparseMat<K> sparse_mul(const SparseMat<K>& a, const SparseMat<K>& b) {
    SparseMat<K> out(b.size());
    for (std::size_t j = 0; j < b.size(); ++j)
        for (const auto& [r, v] : b[j])
            for (const auto& [i, w] : a[r]) {
                K prod = w * v;
                sparse_add_at(out, i, static_cast<int>(j), prod);
            }
    return out;
}

template <typename K>
bool sparse_equal(const SparseMat<K>& a, const SparseMat<K>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (!(a[j] == b[j])) return false;
    return true;
}

template <typename K>
std::vector<K> sparse_apply(const SparseMat<K>& m, const std::vector<K>& v, const K& zero) {
    std::vector<K> out(m.size(), zero);
    for (std::size_t j = 0; j < m.size(); ++j)
        for (const auto& [r, w] : m[j]) out[r] += w * v[j];
    return out;
}

template <typename Ctx>
class FlagModel {
  public:
    using K = typename Ctx::K;

    FlagModel(const Model& model, Ctx ctx)
        : model_(&model), ctx_(std::move(ctx)), flags_(all_permutations(model.m())) {
        for (std::size_t i = 0; i < flags_.size(); ++i) {
            nu_of_.push_back(sequence_of(flags_[i], model.base()));
            index_[flags_[i]] = static_cast<int>(i);
        }
    }

    const Model& model() const { return *model_; }
    const Ctx& scalars() const { return ctx_; }
    int size() const { return static_cast<int>(flags_.size()); }
    const std::vector<Perm>& flags() const { return flags_; }
    const ColorSequence& color_of(int idx) const { return nu_of_[idx]; }
    int flag_index(const Perm& w) const { return index_.at(w); }

    std::vector<int> block(const ColorSequence& nu) const {
        std::vector<int> out;
        for (int i = 0; i < size(); ++i)
            if (nu_of_[i] == nu) out.push_back(i);
        return out;
    }

    K euler_flag(const Perm& w) const {
        const ColorSequence& nu = nu_of_[index_.at(w)];
        K out = ctx_.of_int(1);
        for (int k = 1; k <= model_->m(); ++k)
            for (int k2 = k + 1; k2 <= model_->m(); ++k2)
                if (nu[k - 1] == nu[k2 - 1]) out *= ctx_.chi(w(k2)) - ctx_.chi(w(k));
        return out;
    }

    K euler_fiber(const Perm& w) const {
        const ColorSequence& nu = nu_of_[index_.at(w)];
        K out = ctx_.of_int(1);
        for (int k = 2; k <= model_->m(); ++k)
            for (int k2 = 1; k2 < k; ++k2)
                for (int e : model_->quiver().edges_between(nu[k - 1], nu[k2 - 1]))
                    out *= ctx_.chi(w(k2)) - ctx_.chi(w(k)) + ctx_.hbar(e);
        return out;
    }

    K lambda(const Perm& w) const { return euler_flag(w) * euler_fiber(w); }

    // Euler class of the length-one correspondence at the fixed point
    // (w, w'): the full flag class of w, times one extra orientation factor
    // along strand j when the two colors agree, times the fiber class with
    // the strand-j pair omitted.
    K lambda_sj_direct(const Perm& w, const Perm& wp, int j) const {
        const ColorSequence& nu = nu_of_[index_.at(w)];
        bool equal_colors = nu[j - 1] == nu[j];
        Perm wsj = w * Perm::simple(model_->m(), j);
        if (!(wp == wsj || (equal_colors && wp == w)))
            throw std::logic_error("inadmissible fixed point pair");
        K out = euler_flag(w);
        if (equal_colors) {
            if (wp == w)
                out *= ctx_.chi(w(j + 1)) - ctx_.chi(w(j));
            else
                out *= ctx_.chi(w(j)) - ctx_.chi(w(j + 1));
        }
        // fiber directions away from strand j
        for (int k = 2; k <= model_->m(); ++k)
            for (int k2 = 1; k2 < k; ++k2) {
                if (k2 == j && k == j + 1) continue;
                for (int e : model_->quiver().edges_between(nu[k - 1], nu[k2 - 1]))
                    out *= ctx_.chi(w(k2)) - ctx_.chi(w(k)) + ctx_.hbar(e);
            }
        return out;
    }

    // Entry of the crossing matrix at (row wp, column w), from the local
    // two-strand formula.
    K tau_entry(const Perm& w, const Perm& wp, int j) const {
        const ColorSequence& nu = nu_of_[index_.at(w)];
        int i = nu[j - 1], i2 = nu[j];
        K delta = ctx_.chi(w(j)) - ctx_.chi(w(j + 1));
        if (i != i2) {
            K out = ctx_.of_int(1);
            for (int e : model_->quiver().edges_between(i2, i)) out *= delta + ctx_.hbar(e);
            return out;
        }
        K out = ctx_.of_int(1);
        for (int e : model_->quiver().edges_between(i, i)) out *= delta + ctx_.hbar(e);
        out = ctx_.div(out, delta);
        if (wp == w) return -out;
        return out;
    }

    SparseMat<K> identity_matrix() const {
        SparseMat<K> m(size());
        for (int i = 0; i < size(); ++i) m[i][i] = ctx_.of_int(1);
        return m;
    }

    SparseMat<K> generator_matrix(const Generator& g) const {
        SparseMat<K> m(size());
        for (int idx : block(g.nu)) {
            const Perm& w = flags_[idx];
            switch (g.kind) {
                case GenKind::idem:
                    m[idx][idx] = ctx_.of_int(1);
                    break;
                case GenKind::x:
                    m[idx][idx] = ctx_.chi(w(g.index));
                    break;
                case GenKind::tau: {
                    int j = g.index;
                    Perm wsj = w * Perm::simple(model_->m(), j);
                    int target = index_.at(wsj);
                    sparse_add_at(m, target, idx, tau_entry(w, wsj, j));
                    if (g.nu[j - 1] == g.nu[j])
                        sparse_add_at(m, idx, idx, tau_entry(w, w, j));
                    break;
                }
            }
        }
        return m;
    }

    SparseMat<K> word_matrix(const GeneratorWord& word) const {
        if (word.is_zero()) return SparseMat<K>(size());
        SparseMat<K> m = identity_matrix();
        const auto& fs = word.factors();
        for (auto it = fs.rbegin(); it != fs.rend(); ++it)
            m = sparse_mul(generator_matrix(*it), m);
        return m;
    }

    // Diagonal matrix of a left polynomial coefficient: (w f)(chi) at row w.
    SparseMat<K> coefficient_matrix(const MultiPoly& f) const {
        SparseMat<K> m(size());
        for (int i = 0; i < size(); ++i) {
            K v = ctx_.of_poly(permute(model_->vars(), flags_[i], f));
            if (!scalar_is_zero(v)) m[i][i] = v;
        }
        return m;
    }

    SparseMat<K> element_matrix(const AlgebraElement& a) const {
        SparseMat<K> out(size());
        for (const auto& term : a.terms) {
            SparseMat<K> part = sparse_mul(coefficient_matrix(term.coeff),
                                           word_matrix(term.word));
            for (std::size_t j = 0; j < part.size(); ++j)
                for (const auto& [r, v] : part[j])
                    sparse_add_at(out, r, static_cast<int>(j), v);
        }
        return out;
    }

    // Localization coordinates of a polynomial vector: at each flag w of the
    // block of nu, the value (w f)(chi) divided by the Euler class lambda(w).
    std::vector<K> psi(const PolVector& v) const {
        std::vector<K> out(size(), ctx_.of_int(0));
        for (const auto& [seq_idx, f] : v.comps) {
            const ColorSequence& nu = model_->sequences()[seq_idx];
            for (int idx : block(nu)) {
                const Perm& w = flags_[idx];
                K value = ctx_.of_poly(permute(model_->vars(), w, f));
                out[idx] += ctx_.div(value, lambda(w));
            }
        }
        return out;
    }

  private:
    const Model* model_;
    Ctx ctx_;
    std::vector<Perm> flags_;
    std::vector<ColorSequence> nu_of_;
    std::map<Perm, int> index_;
};

// ---- verification helpers ----------------------------------------------------

struct MatrixCheckResult {
    bool ok = true;
    std::string witness;
};

// lhs and rhs of a relation instance agree as flag matrices.
template <typename Ctx>
MatrixCheckResult verify_relation_matrix(const FlagModel<Ctx>& fp, const RelationInstance& rel) {
    MatrixCheckResult res;
    auto lhs = fp.element_matrix(rel.lhs);
    auto rhs = fp.element_matrix(rel.rhs);
    if (!sparse_equal(lhs, rhs)) {
        res.ok = false;
        for (std::size_t j = 0; j < lhs.size() && res.witness.empty(); ++j) {
            if (lhs[j] == rhs[j]) continue;
            res.witness = rel.family + " at " + serialize_sequence(rel.nu, fp.model().quiver()).dump() +
                          " t=" + std::to_string(rel.t) + " k=" + std::to_string(rel.k) +
                          ": matrices differ in column of flag " +
                          fp.flags()[j].to_string();
        }
    }
    return res;
}

// psi intertwines the polynomial action with the matrix action on one vector.
template <typename Ctx>
bool psi_intertwines(const FlagModel<Ctx>& fp, const AlgebraElement& a, const PolVector& v) {
    using K = typename Ctx::K;
    std::vector<K> lhs = fp.psi(act_element(fp.model(), a, v));
    std::vector<K> rhs = sparse_apply(fp.element_matrix(a), fp.psi(v), fp.scalars().of_int(0));
    for (int i = 0; i < fp.size(); ++i)
        if (!scalar_is_zero(lhs[i] - rhs[i])) return false;
    return true;
}

// Element equality is decided by matrix equality in the flag model; the
// representation is faithful, so a matching matrix is a complete certificate.
struct EqualityCertificate {
    bool equal = true;
    std::string backend;   // "exact" or "randomized"
    int points = 0;        // evaluation points used by the randomized backend
    std::string witness;   // first differing flag column, empty when equal
};

namespace detail {

template <typename Ctx>
std::string first_difference(const FlagModel<Ctx>& fp, const SparseMat<typename Ctx::K>& a,
                             const SparseMat<typename Ctx::K>& b) {
    for (std::size_t j = 0; j < a.size(); ++j)
        if (!(a[j] == b[j])) return "column of flag " + fp.flags()[j].to_string();
    return "";
}

}  // namespace detail

inline EqualityCertificate elements_equal_exact(const Model& model, const AlgebraElement& a,
                                                const AlgebraElement& b) {
    EqualityCertificate cert;
    cert.backend = "exact";
    FlagModel<UnreducedScalars> fp(model, UnreducedScalars(model));
    auto ma = fp.element_matrix(a), mb = fp.element_matrix(b);
    if (!sparse_equal(ma, mb)) {
        cert.equal = false;
        cert.witness = detail::first_difference(fp, ma, mb);
    }
    return cert;
}

inline EqualityCertificate elements_equal_randomized(const Model& model, const AlgebraElement& a,
                                                     const AlgebraElement& b, Rng& rng,
                                                     int trials) {
    EqualityCertificate cert;
    cert.backend = "randomized";
    for (int t = 0; t < trials && cert.equal; ++t) {
        with_resampling(model.vars(), rng, [&](const EvalPoint& pt) {
            FlagModel<NumericScalars> fp(model, NumericScalars(model, pt));
            auto ma = fp.element_matrix(a), mb = fp.element_matrix(b);
            ++cert.points;
            if (!sparse_equal(ma, mb)) {
                cert.equal = false;
                cert.witness = detail::first_difference(fp, ma, mb);
            }
            return true;
        });
    }
    return cert;
}

// The commuting square of the localization: for every generator g and every
// monomial vector v of grading degree <= max_degree, the coordinates of the
// acted vector equal the matrix acting on the coordinates.
struct CrossCheckReport {
    int checked = 0;
    bool ok = true;
    std::string witness;
};

template <typename Ctx>
void cross_check_on(const FlagModel<Ctx>& fp, int max_degree, CrossCheckReport& report) {
    using K = typename Ctx::K;
    const Model& model = fp.model();
    std::vector<Generator> gens;
    for (const ColorSequence& nu : model.sequences()) {
        gens.push_back(Generator::idem(nu));
        for (int k = 1; k <= model.m(); ++k) gens.push_back(Generator::x(k, nu));
        for (int t = 1; t + 1 <= model.m(); ++t) gens.push_back(Generator::tau(t, nu));
    }
    // Generator matrices do not depend on the vector, and the coordinates of
    // the vector do not depend on the generator; hoist both out of the pair
    // loop.
    std::vector<AlgebraElement> elems;
    std::vector<SparseMat<K>> mats;
    for (const Generator& g : gens) {
        elems.push_back(AlgebraElement::of(model, GeneratorWord::of({g})));
        mats.push_back(fp.element_matrix(elems.back()));
    }
    for (const ColorSequence& nu : model.sequences()) {
        detail::for_each_monomial(model.nvars(), max_degree / 2, [&](const Mono& expo) {
            if (!report.ok) return;
            PolVector v = PolVector::monomial(model, nu, expo);
            std::vector<K> psiv = fp.psi(v);
            for (std::size_t gi = 0; gi < gens.size(); ++gi) {
                if (!report.ok) return;
                ++report.checked;
                std::vector<K> lhs = fp.psi(act_element(model, elems[gi], v));
                std::vector<K> rhs = sparse_apply(mats[gi], psiv, fp.scalars().of_int(0));
                bool same = true;
                for (int i = 0; i < fp.size() && same; ++i)
                    same = scalar_is_zero(lhs[i] - rhs[i]);
                if (!same) {
                    report.ok = false;
                    report.witness = "generator " + gens[gi].to_string(model.quiver()) +
                                     " on monomial vector at " +
                                     serialize_sequence(nu, model.quiver()).dump();
                }
            }
        });
    }
}

inline CrossCheckReport cross_check_theorem(const Model& model, int max_degree) {
    CrossCheckReport report;
    FlagModel<ExactScalars> fp(model, ExactScalars(model));
    cross_check_on(fp, max_degree, report);
    return report;
}

inline CrossCheckReport cross_check_theorem_randomized(const Model& model, int max_degree,
                                                       Rng& rng, int trials) {
    CrossCheckReport report;
    for (int t = 0; t < trials && report.ok; ++t) {
        CrossCheckReport one;
        with_resampling(model.vars(), rng, [&](const EvalPoint& pt) {
            one = CrossCheckReport();
            FlagModel<NumericScalars> fp(model, NumericScalars(model, pt));
            cross_check_on(fp, max_degree, one);
            return true;
        });
        report.checked += one.checked;
        if (!one.ok) {
            report.ok = false;
            report.witness = one.witness;
        }
    }
    return report;
}

}  // namespace klr
