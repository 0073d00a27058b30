/*
 * polynomial_rep.hpp
 * ------------------
 * The defining representation on colored polynomial spaces: a vector is one
 * polynomial per color sequence, and generators act by projection, by
 * multiplication, and by twisted difference operators.
 *
 * For a vector component f at sequence nu:
 *   e(nu')   keeps the nu' component and drops the rest;
 *   x_k(nu') keeps the nu' component multiplied by x_k;
 *   tau_t(nu') drops everything but the nu' component f, then
 *     - distinct colors nu_t != nu_{t+1}: contributes to component s_t nu the
 *       polynomial  prod over edges e: nu_t -> nu_{t+1} of
 *       (x_t - x_{t+1} + hbar[e])  times the swapped polynomial s_t f;
 *     - equal colors: contributes to component nu the polynomial
 *       P_{nu_t}(x_t, x_{t+1}) * demazure_t(f).
 * Words act rightmost factor first; elements act termwise with the
 * polynomial coefficient multiplying the result on the left.
 *
 * verify_relation checks lhs and rhs agree on a sweep of monomial vectors
 * (exact, degree-bounded) and optionally on random polynomial vectors.
 */
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "klr/presentation.hpp"
#include "klr/rational.hpp"

namespace klr {

// One polynomial per color sequence, sparsely stored by sequence index.
struct PolVector {
    std::map<int, MultiPoly> comps;

    static PolVector monomial(const Model& model, const ColorSequence& nu, const Mono& expo) {
        MultiPoly f = model.constant(Rational(1));
        for (std::size_t v = 0; v < expo.size(); ++v)
            if (expo[v] > 0) f *= MultiPoly::variable(model.nvars(), static_cast<int>(v), expo[v]);
        PolVector out;
        out.comps[model.index_of(nu)] = std::move(f);
        return out;
    }

    PolVector& add(int idx, const MultiPoly& f) {
        if (f.is_zero()) return *this;
        auto it = comps.find(idx);
        if (it == comps.end()) {
            comps[idx] = f;
        } else {
            it->second += f;
            if (it->second.is_zero()) comps.erase(it);
        }
        return *this;
    }

    bool is_zero() const { return comps.empty(); }

    bool operator==(const PolVector& o) const { return comps == o.comps; }

    std::string to_string(const Model& model) const {
        if (comps.empty()) return "0";
        std::string s;
        for (const auto& [idx, f] : comps) {
            if (!s.empty()) s += " ; ";
            s += "[" + serialize_sequence(model.sequences()[idx], model.quiver()).dump() + "] " +
                 klr::to_string(model.vars(), f);
        }
        return s;
    }
};

inline PolVector act_generator(const Model& model, const Generator& g, const PolVector& v) {
    PolVector out;
    int idx = model.index_of(g.nu);
    auto it = v.comps.find(idx);
    if (it == v.comps.end()) return out;
    const MultiPoly& f = it->second;
    switch (g.kind) {
        case GenKind::idem:
            out.add(idx, f);
            break;
        case GenKind::x:
            out.add(idx, model.xvar(g.index) * f);
            break;
        case GenKind::tau: {
            int t = g.index;
            int i = g.nu[t - 1], j = g.nu[t];
            if (i != j) {
                MultiPoly coeff = model.constant(Rational(1));
                for (int e : model.quiver().edges_between(i, j))
                    coeff *= model.xvar(t) - model.xvar(t + 1) + model.hvar(e);
                out.add(model.index_of(model.simple_swap(t, g.nu)),
                        coeff * permute(model.vars(), Perm::simple(model.m(), t), f));
            } else {
                out.add(idx, model.P(i, t, t + 1) * demazure(model.vars(), t, f));
            }
            break;
        }
    }
    return out;
}

inline PolVector act_word(const Model& model, const GeneratorWord& w, const PolVector& v) {
    if (w.is_zero()) return {};
    PolVector cur = v;
    const auto& fs = w.factors();
    for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
        if (cur.is_zero()) return cur;
        cur = act_generator(model, *it, cur);
    }
    return cur;
}

inline PolVector act_element(const Model& model, const AlgebraElement& a, const PolVector& v) {
    PolVector out;
    for (const auto& term : a.terms) {
        PolVector part = act_word(model, term.word, v);
        for (const auto& [idx, f] : part.comps) out.add(idx, term.coeff * f);
    }
    return out;
}

// ---- relation verification ---------------------------------------------------

struct RepCheckResult {
    bool ok = true;
    std::string witness;   // description of the first failing test vector
};

namespace detail {

inline void for_each_monomial(int m, int maxdeg, const std::function<void(const Mono&)>& fn) {
    Mono expo(m, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == m) {
            fn(expo);
            return;
        }
        for (int d = 0; d <= left; ++d) {
            expo[pos] = d;
            rec(pos + 1, left - d);
        }
        expo[pos] = 0;
    };
    rec(0, maxdeg);
}

inline MultiPoly random_poly(const Model& model, Rng& rng, int maxdeg, int terms) {
    MultiPoly f(model.nvars());
    for (int t = 0; t < terms; ++t) {
        Mono expo(model.nvars(), 0);
        int budget = maxdeg;
        for (int v = 0; v < model.nvars() && budget > 0; ++v) {
            int d = static_cast<int>(rng.raw() % static_cast<unsigned>(budget + 1));
            expo[v] = d;
            budget -= d;
        }
        Rational c = rng.integer(-9, 9);
        if (!klr::is_zero(c)) f.add_term(expo, c);
    }
    return f;
}

}  // namespace detail

// Checks one relation instance on the representation: exact sweep over all
// monomial vectors of naive degree <= max_naive_degree in every component,
// plus random_trials random polynomial vectors when rng is given.
inline RepCheckResult verify_relation(const Model& model, const RelationInstance& rel,
                                      int max_naive_degree, Rng* rng = nullptr,
                                      int random_trials = 0) {
    RepCheckResult res;
    auto check = [&](const PolVector& v, const std::function<std::string()>& what) {
        if (!res.ok) return;
        PolVector lhs = act_element(model, rel.lhs, v);
        PolVector rhs = act_element(model, rel.rhs, v);
        if (!(lhs == rhs)) {
            res.ok = false;
            res.witness = rel.family + " at " +
                          serialize_sequence(rel.nu, model.quiver()).dump() + " t=" +
                          std::to_string(rel.t) + " k=" + std::to_string(rel.k) +
                          " on " + what() + ": lhs = " + lhs.to_string(model) +
                          ", rhs = " + rhs.to_string(model);
        }
    };
    for (const ColorSequence& nu : model.sequences()) {
        if (!res.ok) break;
        detail::for_each_monomial(model.m(), max_naive_degree, [&](const Mono& expo) {
            if (!res.ok) return;
            Mono full(model.nvars(), 0);
            for (int k = 0; k < model.m(); ++k) full[k] = expo[k];
            PolVector v = PolVector::monomial(model, nu, full);
            check(v, [&] {
                return "monomial " +
                       klr::to_string(model.vars(), v.comps.begin()->second) + " at " +
                       serialize_sequence(nu, model.quiver()).dump();
            });
        });
    }
    if (rng != nullptr) {
        for (int trial = 0; trial < random_trials && res.ok; ++trial) {
            PolVector v;
            for (const ColorSequence& nu : model.sequences())
                v.add(model.index_of(nu), detail::random_poly(model, *rng, 3, 4));
            check(v, [&] { return "random vector " + std::to_string(trial); });
        }
    }
    return res;
}

}  // namespace klr
