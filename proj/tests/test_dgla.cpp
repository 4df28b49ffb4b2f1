#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "defq/dgla.hpp"
#include "fixtures.hpp"

using namespace defq;

TEST_CASE("abelian algebra validates") {
    Dgla g;
    g.complex.space.basis[0] = {"x", "y"};
    g.complex.space.basis[-1] = {"z"};
    g.complex.d = GradedMap::zero(g.complex.space, g.complex.space, -1);
    CHECK(validate(g).ok());
}

TEST_CASE("bundled algebras validate") {
    CHECK(validate(fixtures::circle()).ok());
    CHECK(validate(fixtures::obstruction()).ok());
    CHECK(validate(fixtures::abelian()).ok());
    CHECK(validate(fixtures::heisenberg()).ok());
    CHECK(validate(fixtures::fourterm()).ok());
    CHECK(validate(fixtures::mixed()).ok());
}

TEST_CASE("two-term algebra with the symmetric half-sum bracket validates") {
    // d(v,u) = u together with [.,.] = (u1 u2 + v1 v2)/2; Jacobi is trivial
    // because triple brackets land in degree -3 = 0.
    Dgla g;
    g.complex.space.basis[-1] = {"v", "u"};
    g.complex.space.basis[-2] = {"w"};
    g.complex.d = GradedMap::zero(g.complex.space, g.complex.space, -1);
    Matrix d1(1, 2);
    d1.at(0, 1) = Rational(1);
    g.complex.d.set_block(-1, d1);
    g.set_bracket("v", "v", {{"w", Rational(1, 2)}});
    g.set_bracket("u", "u", {{"w", Rational(1, 2)}});
    CHECK(validate(g).ok());
}

TEST_CASE("a broken Jacobi triple is reported by name") {
    Dgla g;
    g.complex.space.basis[-1] = {"x"};
    g.complex.space.basis[-2] = {"y"};
    g.complex.space.basis[-3] = {"z"};
    g.complex.d = GradedMap::zero(g.complex.space, g.complex.space, -1);
    g.set_bracket("x", "x", {{"y", Rational(1)}});
    g.set_bracket("x", "y", {{"z", Rational(1)}});  // breaks [x,[x,x]] = 0
    const ValidationReport rep = validate(g);
    REQUIRE_FALSE(rep.ok());
    bool found = false;
    for (const auto& i : rep.issues)
        if (i.check == "graded Jacobi" && i.witness == "(x, x, x)")
            found = true;
    CHECK(found);
}

TEST_CASE("broken Leibniz is reported") {
    Dgla g;
    g.complex.space.basis[-1] = {"u"};
    g.complex.space.basis[-2] = {"w"};
    g.complex.space.basis[-3] = {"t"};
    g.complex.d = GradedMap::zero(g.complex.space, g.complex.space, -1);
    // d(u) = 0 but d(w) = t, so d[u,u] = t while [du,u] +- [u,du] = 0.
    g.set_bracket("u", "u", {{"w", Rational(1)}});
    Matrix d2(1, 1);
    d2.at(0, 0) = Rational(1);
    g.complex.d.set_block(-2, d2);
    const ValidationReport rep = validate(g);
    REQUIRE_FALSE(rep.ok());
    bool found = false;
    for (const auto& i : rep.issues)
        if (i.check == "graded Leibniz")
            found = true;
    CHECK(found);
}

TEST_CASE("postnikov stage at k = 0 is the degree-zero homology") {
    // Three-term algebra with H_0 = 0 after cutting: use fourterm, whose
    // degree 0 maps isomorphically into the boundaries.
    const Dgla g = fixtures::fourterm();
    const ContractionBuild c = build_contraction(g.complex);
    const Dgla q = postnikov_stage(g, 0, c);
    CHECK(q.complex.space.total_dim() == homology(g.complex).h_space.dim(0));
    CHECK(q.complex.space.total_dim() == 0);
}

TEST_CASE("postnikov stage keeps an already-truncated algebra") {
    const Dgla g = fixtures::circle();
    const ContractionBuild c = build_contraction(g.complex);
    const Dgla q = postnikov_stage(g, -2, c);
    CHECK(q.complex.space == g.complex.space);
    CHECK(q.bracket == g.bracket);
}

TEST_CASE("postnikov stage of a three-term algebra against the hand quotient") {
    // Degrees 0 (e), -1 (a, f), -2 (p); d(e) = f, d(a) = p; [a,a] = 2p.
    Dgla g;
    g.complex.space.basis[0] = {"e"};
    g.complex.space.basis[-1] = {"a", "f"};
    g.complex.space.basis[-2] = {"p"};
    g.complex.d = GradedMap::zero(g.complex.space, g.complex.space, -1);
    Matrix d0(2, 1);
    d0.at(1, 0) = Rational(1);
    g.complex.d.set_block(0, d0);
    Matrix d1(1, 2);
    d1.at(0, 0) = Rational(1);
    g.complex.d.set_block(-1, d1);
    g.set_bracket("a", "a", {{"p", Rational(2)}});
    REQUIRE(validate(g).ok());

    const ContractionBuild c = build_contraction(g.complex);
    const Dgla q = postnikov_stage(g, -1, c);
    REQUIRE(validate(q).ok());
    // Hand quotient: a is killed (h of the boundary p), f survives, and the
    // whole degree -2 is cut away; d(e) = f remains.
    CHECK(q.complex.space.dim(0) == 1);
    CHECK(q.complex.space.dim(-1) == 1);
    CHECK(q.complex.space.dim(-2) == 0);
    CHECK(q.bracket.empty());
    CHECK_FALSE(q.complex.d.block(0).is_zero());
}

TEST_CASE("postnikov tower: decreasing stages reach the algebra itself") {
    const Dgla g = fixtures::fourterm();
    const ContractionBuild c = build_contraction(g.complex);
    // Stage dimensions shrink as the cut moves down; the bottom stage is g.
    const Dgla q0 = postnikov_stage(g, 0, c);
    const Dgla q1 = postnikov_stage(g, -1, c);
    const Dgla q2 = postnikov_stage(g, -2, c);
    const Dgla q3 = postnikov_stage(g, -3, c);
    CHECK(q0.complex.space.total_dim() <= q1.complex.space.total_dim());
    CHECK(q1.complex.space.total_dim() <= q2.complex.space.total_dim());
    CHECK(q2.complex.space.total_dim() <= q3.complex.space.total_dim());
    CHECK(q3.complex.space == g.complex.space);
    CHECK(q3.bracket == g.bracket);
    CHECK(q3.complex.d == g.complex.d);
    for (const Dgla* q : {&q0, &q1, &q2, &q3})
        CHECK(validate(*q).ok());
}

TEST_CASE("reduce leaves reduced algebras and algebras without degree zero alone") {
    const Dgla g = fixtures::circle();
    const ContractionBuild c = build_contraction(g.complex);
    const Dgla r = reduce(g, c);
    CHECK(r.complex.space == g.complex.space);
    CHECK(r.bracket == g.bracket);
}

TEST_CASE("reduce of an acyclic pair is the zero algebra") {
    Dgla g;
    g.complex.space.basis[0] = {"a"};
    g.complex.space.basis[-1] = {"b"};
    g.complex.d = GradedMap::zero(g.complex.space, g.complex.space, -1);
    Matrix d0(1, 1);
    d0.at(0, 0) = Rational(1);
    g.complex.d.set_block(0, d0);
    const ContractionBuild c = build_contraction(g.complex);
    const Dgla r = reduce(g, c);
    CHECK(r.complex.space.total_dim() == 0);
}

TEST_CASE("truncation of the four-term algebra, cross-checked by composition") {
    const Dgla g = fixtures::fourterm();
    const ContractionBuild c = build_contraction(g.complex);
    const Dgla k = truncate_minus1_minus2(g, c);
    REQUIRE(validate(k).ok());
    CHECK(k.complex.space.dim(-1) == 1);
    CHECK(k.complex.space.dim(-2) == 1);
    CHECK(k.complex.d.is_zero());
    // Surviving bracket is [a,a] = 2p in the new labels.
    REQUIRE(k.bracket.size() == 1);
    const auto& entry = *k.bracket.begin();
    REQUIRE(entry.second.size() == 1);
    CHECK(entry.second[0].second == Rational(2));

    // Independent composition path.
    const Dgla red = reduce(g, c);
    const Dgla k2 = postnikov_stage(red, -2, build_contraction(red.complex));
    CHECK(k2.complex.space == k.complex.space);
    CHECK(k2.bracket == k.bracket);
}

TEST_CASE("quadratic data of the circle reproduces u^2 + v^2") {
    const Dgla k = fixtures::circle();
    const ContractionBuild c = build_contraction(k.complex);
    const QuadraticData q = quadratic_data(k, c);
    // Coefficients on gamma_2(s v), gamma_2(s u), and the mixed pair.
    CHECK(q.qB.at({0, 0}) == Vec{Rational(1)});
    CHECK(q.qB.at({1, 1}) == Vec{Rational(1)});
    CHECK(q.qB.at({0, 1}) == Vec{Rational(0)});
    for (const auto& [key, val] : q.qv)
        CHECK(vec::is_zero(val));
}

TEST_CASE("quadratic data of an abelian two-term algebra vanishes") {
    const Dgla k = fixtures::abelian();
    const ContractionBuild c = build_contraction(k.complex);
    const QuadraticData q = quadratic_data(k, c);
    for (const auto& [key, val] : q.qB)
        CHECK(vec::is_zero(val));
    for (const auto& [key, val] : q.qv)
        CHECK(vec::is_zero(val));
}

TEST_CASE("quadratic data of [x,x] = y sits in the harmonic component") {
    const Dgla k = fixtures::obstruction();
    const ContractionBuild c = build_contraction(k.complex);
    const QuadraticData q = quadratic_data(k, c);
    CHECK(vec::is_zero(q.qB.at({0, 0})));
    CHECK(q.qv.at({0, 0}) == Vec{Rational(1, 2)});
}

TEST_CASE("quadratic data reconstructs half the suspended bracket") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 10; ++trial) {
        const Dgla k = fixtures::random_two_term(rng);
        const ContractionBuild c = build_contraction(k.complex);
        const QuadraticData q = quadratic_data(k, c);
        const Contraction cv = suspend_contraction(c.contraction);

        std::uniform_int_distribution<long> coeff(-3, 3);
        const int n0 = k.complex.space.dim(-1);
        Vec x(n0);
        for (auto& v : x)
            v = Rational(coeff(rng), 2);
        // q(x) assembled from components vs 1/2 s [s^-1 x, s^-1 x].
        Vec expect = vec::scaled(k.bracket_vec(-1, x, -1, x), Rational(1, 2));
        Vec got = vec::zero(k.complex.space.dim(-2));
        for (int i = 0; i < n0; ++i)
            for (int j = i; j < n0; ++j) {
                const Rational f = (i == j) ? x[i] * x[j] : Rational(2) * x[i] * x[j];
                got = vec::add(got, vec::scaled(q.assembled(cv.nabla, i, j), f));
            }
        CHECK(got == expect);
    }
}

TEST_CASE("boundary bracket part kills exactly the harmonic component") {
    const Dgla k = fixtures::mixed();
    const ContractionBuild c = build_contraction(k.complex);
    const Dgla ka = boundary_bracket_part(k, c);
    REQUIRE(validate(ka).ok());
    // Every bracket value of ka lies in the boundaries.
    for (const auto& [key, value] : ka.bracket) {
        Vec v = vec::zero(k.complex.space.dim(-2));
        const auto table = label_table(k.complex.space);
        for (const auto& [l, coeff] : value)
            v[table.at(l).second] += coeff;
        CHECK(vec::is_zero(c.contraction.pi.apply(-2, v)));
    }
}
