/*
 * test_fixed_point.cpp
 * --------------------
 * The flag-matrix model: Euler classes, crossing matrices, the two routes to
 * the correspondence classes, matrix forms of every defining relation, and
 * the intertwiner against the polynomial action.
 */
#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "klr/fixed_point.hpp"

namespace {

using namespace klr;

Quiver load(const std::string& name) {
    return parse_quiver_file(std::string(KLR_FIXTURE_DIR) + "/" + name + ".json");
}

RootVector root(const Quiver& q, const std::vector<std::pair<std::string, int>>& parts) {
    RootVector a;
    for (const auto& [name, mult] : parts) a.mult[q.vertex_index(name)] = mult;
    return a;
}

struct Case {
    const char* quiver;
    std::vector<std::pair<std::string, int>> parts;
};

TEST(EulerClass, OneStrandIsTrivial) {
    // A single strand has no pairs at all, so lambda = 1 even with loops.
    Quiver jordan = load("jordan");
    Model model(jordan, root(jordan, {{"i", 1}}));
    FlagModel<ExactScalars> fp(model, ExactScalars(model));
    EXPECT_EQ(fp.size(), 1);
    EXPECT_EQ(fp.lambda(Perm(1)), RatFunc(model.constant(Rational(1))));
}

TEST(EulerClass, OneLoopTwoStrandsFrozen) {
    // lambda_id = (chi2 - chi1)(chi1 - chi2 + hbar), and the s-flag value is
    // the chi-swap of that.
    Quiver jordan = load("jordan");
    Model model(jordan, root(jordan, {{"i", 2}}));
    FlagModel<ExactScalars> fp(model, ExactScalars(model));
    MultiPoly chi1 = model.xvar(1), chi2 = model.xvar(2), h = model.hvar(0);
    Perm id(2), s = Perm::simple(2, 1);
    EXPECT_EQ(fp.lambda(id), RatFunc((chi2 - chi1) * (chi1 - chi2 + h)));
    EXPECT_EQ(fp.lambda(s), RatFunc((chi1 - chi2) * (chi2 - chi1 + h)));
}

TEST(EulerClass, DistinctColorsSplitFlagAndFiber) {
    // One arrow i -> j, one strand of each color: no equal-color pairs, so
    // the flag part is 1; the fiber part depends on the flag's color order.
    Quiver a2 = load("a2");
    Model model(a2, root(a2, {{"i", 1}, {"j", 1}}));
    FlagModel<ExactScalars> fp(model, ExactScalars(model));
    MultiPoly chi1 = model.xvar(1), chi2 = model.xvar(2), h = model.hvar(0);
    Perm id(2), s = Perm::simple(2, 1);
    RatFunc one(model.constant(Rational(1)));
    EXPECT_EQ(fp.euler_flag(id), one);
    EXPECT_EQ(fp.euler_flag(s), one);
    // id carries (i, j): pair (k=2, k'=1) wants edges j -> i, none exist.
    EXPECT_EQ(fp.lambda(id), one);
    // s carries (j, i): pair (2, 1) wants edges i -> j, the single arrow.
    EXPECT_EQ(fp.lambda(s), RatFunc(chi2 - chi1 + h));
}

TEST(EulerClass, DegreeCountsPairs) {
    // The Euler class is homogeneous of polynomial degree equal to the number
    // of equal-color pairs plus the number of fiber edge pairs.
    std::vector<Case> cases = {
        {"jordan", {{"i", 3}}}, {"twoloop", {{"i", 2}}}, {"loopedge", {{"i", 2}, {"j", 1}}}};
    for (const Case& c : cases) {
        Quiver q = load(c.quiver);
        Model model(q, root(q, c.parts));
        FlagModel<ExactScalars> fp(model, ExactScalars(model));
        for (const Perm& w : fp.flags()) {
            const ColorSequence& nu = fp.color_of(fp.flag_index(w));
            int pairs = 0;
            for (int k = 1; k <= model.m(); ++k)
                for (int k2 = k + 1; k2 <= model.m(); ++k2) {
                    if (nu[k - 1] == nu[k2 - 1]) ++pairs;
                    pairs += static_cast<int>(
                        model.quiver().edges_between(nu[k2 - 1], nu[k - 1]).size());
                }
            RatFunc lam = fp.lambda(w);
            ASSERT_TRUE(lam.is_polynomial());
            EXPECT_TRUE(lam.num().is_homogeneous());
            EXPECT_EQ(lam.num().total_degree(), pairs);
        }
    }
}

TEST(CrossingMatrix, OneLoopSquareFrozen) {
    // M(tau)^2 = -2 M(tau) for one loop on two strands.
    Quiver jordan = load("jordan");
    Model model(jordan, root(jordan, {{"i", 2}}));
    FlagModel<ExactScalars> fp(model, ExactScalars(model));
    ColorSequence nu = {0, 0};
    auto M = fp.generator_matrix(Generator::tau(1, nu));
    auto M2 = sparse_mul(M, M);
    auto minus2M = sparse_mul(fp.coefficient_matrix(model.constant(Rational(-2))), M);
    EXPECT_TRUE(sparse_equal(M2, minus2M));
}

TEST(CrossingMatrix, DistinctColorsComposeToArrowPolynomial) {
    // Crossing there and back multiplies by Q_{i,j}(chi_1, chi_2) on the
    // block of (i, j).
    Quiver a2 = load("a2");
    Model model(a2, root(a2, {{"i", 1}, {"j", 1}}));
    FlagModel<ExactScalars> fp(model, ExactScalars(model));
    ColorSequence ij = {0, 1}, ji = {1, 0};
    auto M = sparse_mul(fp.generator_matrix(Generator::tau(1, ji)),
                        fp.generator_matrix(Generator::tau(1, ij)));
    auto rhs = sparse_mul(fp.coefficient_matrix(model.Q(0, 1, 1, 2)),
                          fp.generator_matrix(Generator::idem(ij)));
    EXPECT_TRUE(sparse_equal(M, rhs));
}

TEST(Correspondence, DirectMatchesQuotientEverywhere) {
    // lambda(w) = lambda_sj_direct(w, w', j) * tau_entry(w, w', j) for every
    // admissible triple: the full product formula for the correspondence
    // class agrees with the local two-strand entry.
    std::vector<Case> cases = {
        {"a1", {{"i", 2}}},
        {"a2", {{"i", 1}, {"j", 1}}},
        {"a2", {{"i", 2}, {"j", 1}}},
        {"jordan", {{"i", 3}}},
        {"twoloop", {{"i", 2}}},
        {"loopedge", {{"i", 2}, {"j", 1}}},
    };
    for (const Case& c : cases) {
        Quiver q = load(c.quiver);
        Model model(q, root(q, c.parts));
        FlagModel<ExactScalars> fp(model, ExactScalars(model));
        for (const Perm& w : fp.flags()) {
            const ColorSequence& nu = fp.color_of(fp.flag_index(w));
            for (int j = 1; j < model.m(); ++j) {
                Perm wsj = w * Perm::simple(model.m(), j);
                std::vector<Perm> targets = {wsj};
                if (nu[j - 1] == nu[j]) targets.push_back(w);
                for (const Perm& wp : targets) {
                    RatFunc product = fp.lambda_sj_direct(w, wp, j) * fp.tau_entry(w, wp, j);
                    EXPECT_EQ(product, fp.lambda(w))
                        << c.quiver << " w=" << w.to_string() << " j=" << j;
                }
            }
        }
    }
}

TEST(Relations, AllFamiliesHoldAsMatrices) {
    std::vector<Case> cases = {
        {"a1", {{"i", 3}}},          {"a2", {{"i", 2}, {"j", 1}}},
        {"jordan", {{"i", 3}}},      {"twoloop", {{"i", 3}}},
        {"loopedge", {{"i", 2}, {"j", 1}}},
    };
    for (const Case& c : cases) {
        Quiver q = load(c.quiver);
        Model model(q, root(q, c.parts));
        FlagModel<ExactScalars> fp(model, ExactScalars(model));
        for (const auto& rel : relation_catalogue(model)) {
            MatrixCheckResult res = verify_relation_matrix(fp, rel);
            EXPECT_TRUE(res.ok) << c.quiver << ": " << res.witness;
        }
    }
}

TEST(Relations, SignFaultBreaksMatrixModel) {
    // The geometry knows nothing of the faulty sign, so the r2 instances at
    // mixed colors must fail against the flag matrices as well.
    Quiver faulty = load("a2_qsign");
    Model model(faulty, root(faulty, {{"i", 1}, {"j", 1}}));
    FlagModel<ExactScalars> fp(model, ExactScalars(model));
    bool saw_failure = false;
    for (const auto& rel : relation_catalogue(model)) {
        MatrixCheckResult res = verify_relation_matrix(fp, rel);
        if (rel.family == "r2") {
            EXPECT_FALSE(res.ok);
            saw_failure = true;
        } else {
            EXPECT_TRUE(res.ok) << res.witness;
        }
    }
    EXPECT_TRUE(saw_failure);
}

TEST(Intertwiner, CoordinatesFrozenValue) {
    // psi(1 at (i,i)) = (1/lambda_id, 1/lambda_s) and the crossing matrix
    // kills it, matching tau(1) = P * demazure(1) = 0.
    Quiver jordan = load("jordan");
    Model model(jordan, root(jordan, {{"i", 2}}));
    FlagModel<ExactScalars> fp(model, ExactScalars(model));
    ColorSequence nu = {0, 0};
    PolVector v;
    v.add(model.index_of(nu), model.constant(Rational(1)));
    std::vector<RatFunc> coords = fp.psi(v);
    Perm id(2), s = Perm::simple(2, 1);
    RatFunc one(model.constant(Rational(1)));
    EXPECT_EQ(coords[fp.flag_index(id)], one / fp.lambda(id));
    EXPECT_EQ(coords[fp.flag_index(s)], one / fp.lambda(s));
    auto M = fp.generator_matrix(Generator::tau(1, nu));
    std::vector<RatFunc> crossed = sparse_apply(M, coords, fp.scalars().of_int(0));
    for (const RatFunc& c : crossed) EXPECT_TRUE(c.is_zero());
}

TEST(Intertwiner, GeneratorsCommuteWithPsi) {
    std::vector<Case> cases = {
        {"a2", {{"i", 1}, {"j", 1}}}, {"jordan", {{"i", 2}}}, {"loopedge", {{"i", 1}, {"j", 1}}}};
    for (const Case& c : cases) {
        Quiver q = load(c.quiver);
        Model model(q, root(q, c.parts));
        FlagModel<ExactScalars> fp(model, ExactScalars(model));
        for (const ColorSequence& nu : model.sequences()) {
            std::vector<Generator> gens = {Generator::idem(nu)};
            for (int k = 1; k <= model.m(); ++k) gens.push_back(Generator::x(k, nu));
            for (int t = 1; t < model.m(); ++t) gens.push_back(Generator::tau(t, nu));
            for (const ColorSequence& nu0 : model.sequences()) {
                for (int d = 0; d <= 2; ++d) {
                    Mono expo(model.nvars(), 0);
                    expo[0] = d;   // x1^d
                    PolVector v = PolVector::monomial(model, nu0, expo);
                    for (const Generator& g : gens) {
                        AlgebraElement a = AlgebraElement::of(
                            model, GeneratorWord::of({g}));
                        EXPECT_TRUE(psi_intertwines(fp, a, v))
                            << c.quiver << " " << g.to_string(q);
                    }
                }
            }
        }
    }
}

TEST(Numeric, BackendMatchesExactOnRelations) {
    // The sampled-point backend sees the same relation truth values, with
    // resampling on unlucky points.
    Quiver jordan = load("jordan");
    Model model(jordan, root(jordan, {{"i", 3}}));
    Rng rng(97);
    for (const auto& rel : relation_catalogue(model)) {
        bool ok = with_resampling(model.vars(), rng, [&](const EvalPoint& pt) {
            FlagModel<NumericScalars> fp(model, NumericScalars(model, pt));
            return verify_relation_matrix(fp, rel).ok;
        });
        EXPECT_TRUE(ok) << rel.family;
    }
}

TEST(Numeric, IntertwinerHoldsAtSampledPoints) {
    Quiver q = load("loopedge");
    Model model(q, root(q, {{"i", 2}, {"j", 1}}));
    Rng rng(1234);
    ColorSequence nu = model.base();
    Mono expo(model.nvars(), 0);
    expo[1] = 2;
    PolVector v = PolVector::monomial(model, nu, expo);
    for (int t = 1; t < model.m(); ++t) {
        AlgebraElement a = AlgebraElement::of(model, GeneratorWord::of({Generator::tau(t, nu)}));
        bool ok = with_resampling(model.vars(), rng, [&](const EvalPoint& pt) {
            FlagModel<NumericScalars> fp(model, NumericScalars(model, pt));
            return psi_intertwines(fp, a, v);
        });
        EXPECT_TRUE(ok);
    }
}

TEST(Equality, CertificatesOnBothBackends) {
    // Sum of idempotents vs the unit word, on both backends, plus a
    // deliberate inequality with a named witness column.
    Quiver a2 = load("a2");
    Model model(a2, root(a2, {{"i", 1}, {"j", 1}}));
    AlgebraElement unit = AlgebraElement::of(model, GeneratorWord::one());
    AlgebraElement sum = AlgebraElement::zero();
    for (const ColorSequence& nu : model.sequences())
        sum.add(GeneratorWord::of({Generator::idem(nu)}), model.constant(Rational(1)));

    EqualityCertificate exact = elements_equal_exact(model, sum, unit);
    EXPECT_TRUE(exact.equal);
    EXPECT_EQ(exact.backend, "exact");

    Rng rng(31);
    EqualityCertificate randomized = elements_equal_randomized(model, sum, unit, rng, 3);
    EXPECT_TRUE(randomized.equal);
    EXPECT_EQ(randomized.points, 3);

    AlgebraElement x1 = AlgebraElement::of(model, GeneratorWord::of({Generator::x(1, model.base())}));
    EqualityCertificate bad = elements_equal_exact(model, x1, unit);
    EXPECT_FALSE(bad.equal);
    EXPECT_NE(bad.witness.find("flag"), std::string::npos);
}

TEST(Equality, CrossCheckSquareCommutes) {
    // Every generator against every monomial vector of small degree, exact
    // scalars, on a quiver with a loop and an arrow.
    Quiver q = load("loopedge");
    Model model(q, root(q, {{"i", 1}, {"j", 1}}));
    CrossCheckReport report = cross_check_theorem(model, 4);
    EXPECT_TRUE(report.ok) << report.witness;
    EXPECT_GT(report.checked, 0);

    Rng rng(33);
    CrossCheckReport randomized = cross_check_theorem_randomized(model, 4, rng, 2);
    EXPECT_TRUE(randomized.ok) << randomized.witness;
    EXPECT_EQ(randomized.checked, 2 * report.checked);
}

}  // namespace
