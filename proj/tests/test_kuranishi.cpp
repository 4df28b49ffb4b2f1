#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "defq/kuranishi.hpp"
#include "fixtures.hpp"

using namespace defq;

namespace {

KuranishiContext context_for(const Dgla& k, int n) {
    REQUIRE(validate(k).ok());
    const ContractionBuild c = build_contraction(k.complex);
    return KuranishiContext(k, c, n);
}

/// Exact binomial expansion of sqrt(1/4 - v^2) - 1/2: the coefficient of
/// v^{2k} is (1/2) binom(1/2, k) (-4)^k.
Rational circle_series_oracle(int two_k) {
    if (two_k % 2 != 0 || two_k == 0)
        return Rational(0);
    const int k = two_k / 2;
    Rational binom(1);
    Rational factor(1, 2);
    for (int i = 0; i < k; ++i) {
        binom *= (factor - Rational(i)) / Rational(i + 1);
    }
    Rational pow(1);
    for (int i = 0; i < k; ++i)
        pow *= Rational(-4);
    return Rational(1, 2) * binom * pow;
}

}  // namespace

TEST_CASE("the binomial oracle itself produces negated Catalan numbers") {
    CHECK(circle_series_oracle(2) == Rational(-1));
    CHECK(circle_series_oracle(4) == Rational(-1));
    CHECK(circle_series_oracle(6) == Rational(-2));
    CHECK(circle_series_oracle(8) == Rational(-5));
    CHECK(circle_series_oracle(10) == Rational(-14));
    CHECK(circle_series_oracle(12) == Rational(-42));
}

TEST_CASE("kuranishi map of the circle") {
    KuranishiContext ctx = context_for(fixtures::circle(), 6);
    const KuranishiMaps maps = kuranishi_map(ctx);
    CHECK(maps.f_projection_identity);

    // Variables are the suspended labels s.v, s.u in the input order.
    REQUIRE(maps.J.variables == std::vector<Label>{"s·v", "s·u"});
    const int n = 2;
    // J = u + u^2 + v^2 (coefficients in the single V_{-1} direction).
    CHECK(maps.J.at({0, 1}) == Vec{Rational(1)});
    CHECK(maps.J.at({1, 0}) == Vec{Rational(0)});
    CHECK(maps.J.at({2, 0}) == Vec{Rational(1)});
    CHECK(maps.J.at({0, 2}) == Vec{Rational(1)});
    CHECK(maps.J.at({1, 1}) == Vec{Rational(0)});

    // F = (v, u + u^2 + v^2).
    CHECK(maps.F.at({1, 0}) == Vec{Rational(1), Rational(0)});
    CHECK(maps.F.at({0, 1}) == Vec{Rational(0), Rational(1)});
    CHECK(maps.F.at({2, 0}) == Vec{Rational(0), Rational(1)});
    CHECK(maps.F.at({0, 2}) == Vec{Rational(0), Rational(1)});
    CHECK(maps.F.at({1, 1}) == Vec{Rational(0), Rational(0)});
    (void)n;
}

TEST_CASE("kuranishi map of an abelian algebra with zero differential is the identity") {
    KuranishiContext ctx = context_for(fixtures::abelian(), 4);
    const KuranishiMaps maps = kuranishi_map(ctx);
    CHECK(maps.J.is_zero());
    for (const auto& [m, v] : maps.F.coeff)
        CHECK(multi_total(m) == 1);
    CHECK(maps.f_projection_identity);
}

TEST_CASE("kuranishi map of [x,x] = y has no boundary part") {
    KuranishiContext ctx = context_for(fixtures::obstruction(), 4);
    const KuranishiMaps maps = kuranishi_map(ctx);
    // B_{-1} = dV_0 = 0 forces h q_B = 0, so F = id.
    for (const auto& [m, v] : maps.F.coeff)
        CHECK(multi_total(m) == 1);
    // J carries only the harmonic quadratic part x^2/2.
    CHECK(maps.J.at({2}) == Vec{Rational(1, 2)});
    CHECK(maps.f_projection_identity);
}

TEST_CASE("formal inverse of the circle matches the binomial oracle to order 12") {
    KuranishiContext ctx = context_for(fixtures::circle(), 12);
    const VectorSeries inv = formal_inverse(ctx);
    REQUIRE(inv.variables.size() == 1);
    // Coefficients lie in V_0 with basis (s.v, s.u); the u-coordinate is the
    // series of the paper, the v-coordinate is the linear inclusion.
    for (int m = 1; m <= 12; ++m) {
        const Vec c = inv.at({m});
        CHECK(c[0] == (m == 1 ? Rational(1) : Rational(0)));
        CHECK(c[1] == circle_series_oracle(m));
    }
    const InverseChecks checks = check_inverse(ctx, kuranishi_map(ctx), inv);
    CHECK(checks.linear_part_is_inclusion);
    CHECK(checks.composition_is_identity);
    CHECK(checks.membership_identity);
}

TEST_CASE("formal inverse of an abelian algebra is the linear inclusion") {
    KuranishiContext ctx = context_for(fixtures::abelian(), 6);
    const VectorSeries inv = formal_inverse(ctx);
    for (const auto& [m, v] : inv.coeff)
        CHECK(multi_total(m) == 1);
    const InverseChecks checks = check_inverse(ctx, kuranishi_map(ctx), inv);
    CHECK(checks.linear_part_is_inclusion);
    CHECK(checks.composition_is_identity);
    CHECK(checks.membership_identity);
}

TEST_CASE("inverse identities hold on random two-term algebras") {
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 8; ++trial) {
        const Dgla k = fixtures::random_two_term(rng, 3);
        KuranishiContext ctx = context_for(k, 6);
        const VectorSeries inv = formal_inverse(ctx);
        const InverseChecks checks = check_inverse(ctx, kuranishi_map(ctx), inv);
        CAPTURE(trial);
        CHECK(checks.linear_part_is_inclusion);
        CHECK(checks.composition_is_identity);
        CHECK(checks.membership_identity);
    }
}

TEST_CASE("obstruction series: empty, zero, and quadratic cases") {
    {
        KuranishiContext ctx = context_for(fixtures::circle(), 6);
        CHECK(obstruction_series(ctx).empty());  // trivial cokernel
    }
    {
        KuranishiContext ctx = context_for(fixtures::abelian(), 6);
        const auto phis = obstruction_series(ctx);
        REQUIRE(phis.size() == 1);
        CHECK(phis[0].is_zero());
    }
    {
        KuranishiContext ctx = context_for(fixtures::obstruction(), 6);
        const auto phis = obstruction_series(ctx);
        REQUIRE(phis.size() == 1);
        // Phi_1 = z^2 / 2, the hand value of the quadratic corestriction.
        CHECK(phis[0].at({2}) == Vec{Rational(1, 2)});
        int terms = 0;
        for (const auto& [m, v] : phis[0].coeff)
            ++terms;
        CHECK(terms == 1);
    }
}

TEST_CASE("kernel coalgebra dimensions: full for unobstructed, fat point for [x,x] = y") {
    {
        KuranishiContext ctx = context_for(fixtures::circle(), 8);
        const KuranishiCoalgebra ck = kuranishi_coalgebra(ctx);
        for (int len = 0; len <= 8; ++len)
            CHECK(ck.dims[len] == 1);
    }
    {
        KuranishiContext ctx = context_for(fixtures::obstruction(), 8);
        const KuranishiCoalgebra ck = kuranishi_coalgebra(ctx);
        CHECK(ck.dims[0] == 1);
        CHECK(ck.dims[1] == 1);
        for (int len = 2; len <= 8; ++len)
            CHECK(ck.dims[len] == 0);
    }
}

TEST_CASE("vanishing obstruction series is the same as a full kernel coalgebra") {
    std::mt19937_64 rng(313);
    for (int trial = 0; trial < 8; ++trial) {
        const Dgla k = fixtures::random_two_term(rng, 3);
        KuranishiContext ctx = context_for(k, 5);
        const auto phis = obstruction_series(ctx);
        bool all_zero = true;
        for (const auto& p : phis)
            if (!p.is_zero())
                all_zero = false;
        const KuranishiCoalgebra ck = kuranishi_coalgebra(ctx);
        bool full = true;
        for (int len = 0; len <= 5; ++len)
            if (ck.dims[len] != static_cast<int>(ctx.even_words()[len].size()))
                full = false;
        CHECK(all_zero == full);
    }
}

TEST_CASE("kernel coalgebra is a subcoalgebra within the truncation window") {
    KuranishiContext ctx = context_for(fixtures::mixed(), 8);
    const KuranishiCoalgebra ck = kuranishi_coalgebra(ctx);
    const WordBasis& wb = ctx.engine().words();
    for (int len = 0; 2 * len <= 8; ++len) {
        for (int b = 0; b < ck.bases[len].cols; ++b) {
            // Expand Delta of the kernel element per (j, k) and test
            // membership in span(K_j (x) K_k).
            std::map<std::pair<int, int>, std::map<std::pair<SymWord, SymWord>, Rational>>
                delta;
            for (int r = 0; r < ck.bases[len].rows; ++r) {
                const Rational& c = ck.bases[len].at(r, b);
                if (c.is_zero())
                    continue;
                const SymWord& e = wb.word(len, ctx.even_words()[len][r]);
                for (const auto& s : all_splits(wb.gens, e, true))
                    delta[{s.left.length(), s.right.length()}][{s.left, s.right}] +=
                        c * Rational(s.sign);
            }
            for (auto& [jk, terms] : delta) {
                const auto [j, k] = jk;
                const auto& ej = ctx.even_words()[j];
                const auto& ek = ctx.even_words()[k];
                // Span matrix of K_j (x) K_k inside S_j (x) S_k.
                const Matrix& bj = ck.bases[j];
                const Matrix& bk = ck.bases[k];
                Matrix span(static_cast<int>(ej.size() * ek.size()), bj.cols * bk.cols);
                for (int cj = 0; cj < bj.cols; ++cj)
                    for (int ckk = 0; ckk < bk.cols; ++ckk)
                        for (int rj = 0; rj < bj.rows; ++rj)
                            for (int rk = 0; rk < bk.rows; ++rk)
                                span.at(rj * static_cast<int>(ek.size()) + rk,
                                        cj * bk.cols + ckk) = bj.at(rj, cj) * bk.at(rk, ckk);
                Vec target = vec::zero(static_cast<int>(ej.size() * ek.size()));
                bool nonzero = false;
                for (const auto& [pair, c] : terms) {
                    if (c.is_zero())
                        continue;
                    int pj = -1, pk = -1;
                    const int ij = wb.index_of(pair.first);
                    const int ik = wb.index_of(pair.second);
                    for (std::size_t t = 0; t < ej.size(); ++t)
                        if (ej[t] == ij)
                            pj = static_cast<int>(t);
                    for (std::size_t t = 0; t < ek.size(); ++t)
                        if (ek[t] == ik)
                            pk = static_cast<int>(t);
                    REQUIRE(pj >= 0);
                    REQUIRE(pk >= 0);
                    target[pj * static_cast<int>(ek.size()) + pk] = c;
                    nonzero = true;
                }
                if (nonzero)
                    CHECK(solve(span, target).has_value());
            }
        }
    }
}

TEST_CASE("theorem verification passes on the bundled two-term algebras") {
    for (const Dgla& k : {fixtures::circle(), fixtures::abelian(), fixtures::obstruction(),
                          fixtures::mixed()}) {
        KuranishiContext ctx = context_for(k, 6);
        const KuranishiCoalgebra ck = kuranishi_coalgebra(ctx);
        const ValidationReport rep = verify_theorem(ctx, ck);
        CAPTURE(rep.summary());
        CHECK(rep.ok());
    }
}

TEST_CASE("theorem verification passes on random two-term algebras") {
    std::mt19937_64 rng(161803);
    for (int trial = 0; trial < 5; ++trial) {
        const Dgla k = fixtures::random_two_term(rng, 3);
        KuranishiContext ctx = context_for(k, 5);
        const KuranishiCoalgebra ck = kuranishi_coalgebra(ctx);
        const ValidationReport rep = verify_theorem(ctx, ck);
        CAPTURE(trial);
        CAPTURE(rep.summary());
        CHECK(rep.ok());
    }
}

TEST_CASE("degenerate tangent space: all series are constants") {
    // d is an isomorphism: v_0 = 0, v_{-1} = 0.
    Dgla k;
    k.complex.space.basis[-1] = {"x"};
    k.complex.space.basis[-2] = {"y"};
    k.complex.d = GradedMap::zero(k.complex.space, k.complex.space, -1);
    Matrix d1(1, 1);
    d1.at(0, 0) = Rational(1);
    k.complex.d.set_block(-1, d1);
    k.set_bracket("x", "x", {{"y", Rational(1)}});
    KuranishiContext ctx = context_for(k, 4);
    CHECK(ctx.v0_labels().empty());
    const VectorSeries inv = formal_inverse(ctx);
    CHECK(inv.is_zero());
    const KuranishiCoalgebra ck = kuranishi_coalgebra(ctx);
    CHECK(ck.dims[0] == 1);
    for (int len = 1; len <= 4; ++len)
        CHECK(ck.dims[len] == 0);
    CHECK(verify_theorem(ctx, ck).ok());
}
