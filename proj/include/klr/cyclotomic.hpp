/*
 * cyclotomic.hpp
 * --------------
 * Truncated graded dimensions of the quotient by the two-sided ideal
 * generated by the monic vertex polynomials a(x_1) e(nu), a(u) = u^{level},
 * computed degreewise by linear algebra in the numeric flag-matrix model.
 *
 * Edge parameters are specialized at random rationals before the linear
 * algebra, so every reported number is a generic-fiber dimension: the rank
 * of the span at a generic parameter point, not a rank over the parameter
 * ring. Each seed drives its own sample points; the per-degree maxima over
 * seeds are reported and any cross-seed disagreement is flagged.
 *
 * Candidate elements carry x-exponents only; a parameter power times a
 * candidate is a scalar multiple of it once the parameters are numbers, so
 * dropping parameter exponents keeps the spanning property fiberwise.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "klr/eval.hpp"
#include "klr/fixed_point.hpp"
#include "klr/graded_dim.hpp"
#include "klr/linalg.hpp"
#include "klr/presentation.hpp"
#include "klr/quiver.hpp"

namespace klr {

// Nonnegative level per vertex; absent vertices have level zero.
struct DominantWeight {
    std::map<int, int> levels;

    int level(int i) const {
        auto it = levels.find(i);
        return it == levels.end() ? 0 : it->second;
    }
};

inline DominantWeight parse_weight(const nlohmann::json& doc, const Quiver& q) {
    if (!doc.is_object()) throw ParseError("weight", "weight must be an object");
    DominantWeight w;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        int i = q.vertex_index(it.key());
        if (i < 0) throw ParseError("weight." + it.key(), "unknown vertex");
        if (!it.value().is_number_integer() || it.value().get<int>() < 0)
            throw ParseError("weight." + it.key(), "level must be a non-negative integer");
        int k = it.value().get<int>();
        if (k > 0) w.levels[i] = k;
    }
    return w;
}

inline nlohmann::json serialize_weight(const DominantWeight& w, const Quiver& q) {
    nlohmann::json doc = nlohmann::json::object();
    for (auto& [i, k] : w.levels) doc[q.vertices[i]] = k;
    return doc;
}

// The monic vertex polynomial instantiated at x_1: x_1^{level(i)}.
inline MultiPoly a_lambda_poly(const Model& model, const DominantWeight& weight, int i) {
    if (weight.level(i) == 0) return model.constant(Rational(1));
    return model.xvar(1, weight.level(i));
}

namespace detail {

// A product of algebra elements, evaluated in the matrix model only; the
// engine has no symbolic product of words with coefficients.
using FactorList = std::vector<AlgebraElement>;

template <class Ctx>
SparseMat<typename Ctx::K> factor_matrix(const FlagModel<Ctx>& fp, const FactorList& factors) {
    SparseMat<typename Ctx::K> m = fp.identity_matrix();
    for (const AlgebraElement& a : factors) m = sparse_mul(m, fp.element_matrix(a));
    return m;
}

inline GeneratorWord word_or_idem(const Model& model, const Perm& w, const ColorSequence& nu) {
    GeneratorWord word = tau_word(model, w, nu);
    if (word.is_one()) return GeneratorWord::of({Generator::idem(nu)});
    return word;
}

// Monomials in the x variables only (parameter exponents stay zero).
inline void for_each_x_monomial(const Model& model, int total,
                                const std::function<void(const Mono&)>& fn) {
    Mono expo(model.nvars(), 0);
    std::function<void(int, int)> rec = [&](int v, int budget) {
        if (v == model.m() - 1) {
            expo[v] = budget;
            fn(expo);
            expo[v] = 0;
            return;
        }
        for (int t = 0; t <= budget; ++t) {
            expo[v] = t;
            rec(v + 1, budget - t);
        }
        expo[v] = 0;
    };
    if (model.m() == 0) {
        if (total == 0) fn(expo);
        return;
    }
    rec(0, total);
}

inline MultiPoly x_monomial(const Model& model, const Mono& expo) {
    MultiPoly f(model.nvars());
    f.add_term(expo, Rational(1));
    return f;
}

// Degree-d spanning candidates of the whole algebra (x-exponents only),
// optionally restricted to one input color.
inline std::vector<FactorList> full_factor_lists(const Model& model, int d,
                                                 const ColorSequence* nu_in) {
    std::vector<FactorList> out;
    for (const ColorSequence& nu : model.sequences()) {
        if (nu_in && nu != *nu_in) continue;
        for (const Perm& w : all_permutations(model.m())) {
            int rem = d - tau_degree(model, w, nu);
            if (rem < 0 || rem % 2 != 0) continue;
            GeneratorWord word = word_or_idem(model, w, nu);
            for_each_x_monomial(model, rem / 2, [&](const Mono& expo) {
                out.push_back({AlgebraElement::of(word, x_monomial(model, expo))});
            });
        }
    }
    return out;
}

// Degree-d spanning candidates of the two-sided ideal: u . a(x_1)e(nu) . v
// over spanning words u (leaving color nu) and v (arriving at color nu),
// with the three degrees summing to d.
inline std::vector<FactorList> ideal_factor_lists(const Model& model, const DominantWeight& weight,
                                                  int d, const ColorSequence* nu_in) {
    std::vector<FactorList> out;
    for (const ColorSequence& in : model.sequences()) {
        if (nu_in && in != *nu_in) continue;
        for (const Perm& wv : all_permutations(model.m())) {
            ColorSequence nu = weyl_act(wv, in);
            int gen_degree = 2 * weight.level(nu[0]);
            int tv = tau_degree(model, wv, in);
            GeneratorWord vword = word_or_idem(model, wv, in);
            AlgebraElement gen = AlgebraElement::of(
                GeneratorWord::of({Generator::idem(nu)}), a_lambda_poly(model, weight, nu[0]));
            for (const Perm& wu : all_permutations(model.m())) {
                int rem = d - gen_degree - tv - tau_degree(model, wu, nu);
                if (rem < 0 || rem % 2 != 0) continue;
                GeneratorWord uword = word_or_idem(model, wu, nu);
                for (int lb = 0; lb <= rem / 2; ++lb)
                    for_each_x_monomial(model, lb, [&](const Mono& bexpo) {
                        AlgebraElement u = AlgebraElement::of(uword, x_monomial(model, bexpo));
                        for_each_x_monomial(model, rem / 2 - lb, [&](const Mono& aexpo) {
                            AlgebraElement v =
                                AlgebraElement::of(vword, x_monomial(model, aexpo));
                            out.push_back({u, gen, v});
                        });
                    });
            }
        }
    }
    return out;
}

// Rank of a family of matrix products over a growing stack of sample points:
// wide enough that full rank is reachable, then grown while the rank moves.
inline int stacked_rank(const Model& model, const std::vector<FactorList>& family, Rng& rng) {
    if (family.empty()) return 0;
    long count = static_cast<long>(family.size());
    long cols_per_point = 1;
    std::vector<DenseRow> rows(family.size());

    auto add_point = [&] {
        with_resampling(model.vars(), rng, [&](const EvalPoint& pt) {
            FlagModel<NumericScalars> fp(model, NumericScalars(model, pt));
            cols_per_point = static_cast<long>(fp.size()) * static_cast<long>(fp.size());
            std::vector<DenseRow> segments(family.size());
            for (std::size_t i = 0; i < family.size(); ++i) {
                SparseMat<Rational> m = factor_matrix(fp, family[i]);
                DenseRow& seg = segments[i];
                seg.reserve(cols_per_point);
                for (int c = 0; c < fp.size(); ++c)
                    for (int r = 0; r < fp.size(); ++r) {
                        auto it = m[c].find(r);
                        seg.push_back(it == m[c].end() ? Rational(0) : it->second);
                    }
            }
            for (std::size_t i = 0; i < family.size(); ++i)
                rows[i].insert(rows[i].end(), segments[i].begin(), segments[i].end());
            return true;
        });
    };

    auto stack_rank = [&] {
        int r = modular_rank_bound(rows);
        return r >= 0 ? r : matrix_rank(rows);
    };

    add_point();
    long target = std::max<long>(3, (count + cols_per_point - 1) / cols_per_point + 1);
    for (long p = 1; p < target; ++p) add_point();
    int rank = stack_rank();
    for (int slack = 0; slack < 3 && rank < count; ) {
        add_point();
        int next = stack_rank();
        if (next == rank)
            ++slack;
        else
            slack = 0;
        rank = next;
    }
    // Full modular rank is exact; a deficient stack (the normal case for the
    // ideal family) gets the rational verdict.
    if (rank == count) return rank;
    return matrix_rank(rows);
}

}  // namespace detail

struct CycloReport {
    struct Entry {
        int d = 0;
        int dim_full = 0;
        int dim_ideal = 0;
        int dim_quotient = 0;
    };
    int dmin = 0, dmax = 0;
    std::vector<Entry> entries;
    std::vector<std::uint64_t> seeds;
    bool seeds_agree = true;
    long total_quotient = 0;
};

// Least crossing degree over all sequences; the degree window starts there.
inline int min_word_degree(const Model& model) {
    int dmin = 0;
    for (const ColorSequence& nu : model.sequences())
        for (const Perm& w : all_permutations(model.m()))
            dmin = std::min(dmin, tau_degree(model, w, nu));
    return dmin;
}

// Generic-fiber dimensions of the full algebra, the ideal, and the quotient
// for every degree in [min_word_degree, dmax], maxima over the given seeds.
inline CycloReport cyclotomic_dims(const Model& model, const DominantWeight& weight, int dmax,
                                   const std::vector<std::uint64_t>& seeds,
                                   const ColorSequence* nu_in = nullptr) {
    CycloReport report;
    report.seeds = seeds;
    report.dmin = min_word_degree(model);
    report.dmax = dmax;
    for (int d = report.dmin; d <= dmax; ++d) {
        std::vector<detail::FactorList> full = detail::full_factor_lists(model, d, nu_in);
        std::vector<detail::FactorList> ideal = detail::ideal_factor_lists(model, weight, d, nu_in);
        CycloReport::Entry entry;
        entry.d = d;
        bool first = true;
        for (std::uint64_t seed : seeds) {
            Rng rng(seed);
            int rf = detail::stacked_rank(model, full, rng);
            int ri = detail::stacked_rank(model, ideal, rng);
            if (!first && (rf != entry.dim_full || ri != entry.dim_ideal))
                report.seeds_agree = false;
            entry.dim_full = first ? rf : std::max(entry.dim_full, rf);
            entry.dim_ideal = first ? ri : std::max(entry.dim_ideal, ri);
            first = false;
        }
        entry.dim_quotient = entry.dim_full - entry.dim_ideal;
        report.total_quotient += entry.dim_quotient;
        report.entries.push_back(entry);
    }
    return report;
}

}  // namespace klr
